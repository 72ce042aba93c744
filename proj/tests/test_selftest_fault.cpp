// Linked against the fault-injection build of the library: every 4096th
// product in a context is corrupted, and the property suites must notice.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "recseq/selftest.hpp"

TEST_CASE("corrupted multiplication trips the suites") {
    std::ostringstream report;
    CHECK(recseq::run_selftest(0, report) != 0);
    CHECK(report.str().find("FAIL") != std::string::npos);
}
