#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rproj/chaos_oracle.hpp"
#include "rproj/majorization.hpp"
#include "rproj/rng.hpp"

namespace rproj {

/// Seeded source of random test profiles. Every profile lies in a single
/// square class (weights = base * root^2 with rational roots) so the sign
/// enumeration oracle can handle it exactly.
class ProfileSampler {
public:
    explicit ProfileSampler(std::uint64_t seed, std::uint64_t stream = 0)
        : cursor_(CounterStream(seed, stream))
    {
    }

    /// Uniform integer in [lo, hi].
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

    /// K uniform in [min_sparsity, max_sparsity], `padding` trailing zeros,
    /// support shuffled. Roots are a/b with a in [1, max_numerator] and b in
    /// [1, max_denominator]; the shared base is a random small rational.
    WeightProfile profile(std::size_t min_sparsity, std::size_t max_sparsity,
                          std::size_t padding = 0, unsigned max_numerator = 9,
                          unsigned max_denominator = 4);

private:
    StreamCursor cursor_;
};

struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    /// One line per failure, with the offending profile and order printed exactly.
    std::vector<std::string> witnesses;

    bool passed() const { return failures == 0; }
};

using ClosedForm = std::function<Rational(unsigned long sparsity, unsigned q)>;

struct VerifyConfig {
    std::uint64_t seed = 0;
    /// Formula suite: K in [1, k_cap], q in [1, q_cap].
    unsigned long k_cap = 12;
    unsigned q_cap = 10;
    /// Schur suite: pairs with K <= 10 and even q <= 8.
    std::size_t pairs = 200;
    std::size_t domination_profiles = 50;
    std::size_t khintchine_profiles = 100;
    OracleLimits limits;
    /// Closed form checked by the formula suite; replaceable for harness self-tests.
    ClosedForm closed_form;
};

/// Closed form vs exact flat-profile chaos moments, zero tolerance.
SuiteResult run_formula_suite(const VerifyConfig& config);

/// Robin-Hood transfers never decrease even chaos moments.
SuiteResult run_schur_suite(const VerifyConfig& config);

/// Moments of the exact distortion law never exceed the averaged
/// standardized-binomial moments; equality on flat profiles.
SuiteResult run_domination_suite(const VerifyConfig& config);

/// E(sum x_i r_i)^q <= same for the flattened profile <= Gaussian moment.
SuiteResult run_khintchine_suite(const VerifyConfig& config);

std::vector<SuiteResult> run_all_suites(const VerifyConfig& config);

std::string describe(const WeightProfile& p);

}  // namespace rproj
