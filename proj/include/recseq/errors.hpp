#ifndef RECSEQ_ERRORS_HPP
#define RECSEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace recseq {

// Every contract violation in the library throws Error with one of these
// codes. The code is the stable part of the contract; messages are for
// humans and may change.
enum class errc {
    non_prime,
    out_of_range,
    division_by_zero,
    mixed_context,
    both_zero,
    characteristic_too_small,
    not_monic,
    not_coprime,
    degree_violation,
    length_mismatch,
    ring_mismatch,
    too_large,
    singular_projection,
    index_too_large,
    fast_path_unavailable,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace recseq

#endif
