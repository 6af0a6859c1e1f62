#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmb {

enum class ErrorKind {
    truncation,   // Fock cutoff too small for the requested state
    shape,        // mismatched cutoffs / dimensions / arity
    out_of_range, // index outside the truncated space
    precondition, // argument violates an operation's precondition
    invariant,    // a data-type invariant does not hold
    domain,       // physical parameter outside its domain
    degenerate,   // uninformative operating point (vanishing derivative)
    consistency,  // two independent computation routes disagree
    config,       // invalid experiment configuration
    usage,        // unknown command or experiment
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
    if (!condition) fail(kind, what);
}

}  // namespace qmb
