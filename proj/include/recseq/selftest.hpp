#ifndef RECSEQ_SELFTEST_HPP
#define RECSEQ_SELFTEST_HPP

#include <cstdint>
#include <ostream>

namespace recseq {

// Reduced-size property suites, one report line per suite. Deterministic for
// a fixed seed. Returns 0 when every suite passes, 1 otherwise.
int run_selftest(std::uint64_t seed, std::ostream& out);

} // namespace recseq

#endif
