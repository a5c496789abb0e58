#include <gtest/gtest.h>

#include "oracle_check.hpp"

// Every registered metric against its literal-transcription oracle on random
// small fixtures. The acceptance suite repeats this at 500 fixtures; here a
// smaller sweep keeps the unit run fast.
TEST(metric_oracles, registry_matches_transcriptions) {
    const auto bad = oracle_check::run(150, 20240817);
    for (const auto& m : bad)
        ADD_FAILURE() << m.metric << " fixture " << m.fixture << ": impl=" << m.impl
                      << " oracle=" << m.want;
    EXPECT_TRUE(bad.empty());
}
