#include "doctest.h"

#include "subwave/verify.hpp"

using namespace subwave;

TEST_CASE("reduced verification run passes and is deterministic") {
    const VerifyOptions opts{2, 1, 42};
    const std::vector<CheckResult> first = run_verification(opts);
    REQUIRE(first.size() == 12);
    CHECK(all_passed(first));
    for (const CheckResult& r : first) {
        CHECK_FALSE(r.name.empty());
        CHECK(r.tolerance > 0.0);
    }

    const std::vector<CheckResult> second = run_verification(opts);
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].name == second[i].name);
        CHECK(first[i].worst_residual == second[i].worst_residual);
    }

    // A different seed changes the randomized residuals but not the verdicts.
    const std::vector<CheckResult> reseeded = run_verification(VerifyOptions{2, 1, 43});
    CHECK(all_passed(reseeded));
}
