#include "rproj/verify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rproj/moments.hpp"

namespace rproj {

std::uint64_t ProfileSampler::uniform_int(std::uint64_t lo, std::uint64_t hi)
{
    if (hi < lo) {
        throw std::invalid_argument("empty range");
    }
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) {
        return cursor_.next();
    }
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t word;
    do {
        word = cursor_.next();
    } while (word >= limit);
    return lo + word % span;
}

WeightProfile ProfileSampler::profile(std::size_t min_sparsity, std::size_t max_sparsity,
                                      std::size_t padding, unsigned max_numerator,
                                      unsigned max_denominator)
{
    const auto k = static_cast<std::size_t>(uniform_int(min_sparsity, max_sparsity));
    Rational base(Integer(static_cast<unsigned long>(uniform_int(1, 5))),
                  Integer(static_cast<unsigned long>(uniform_int(1, 5))));
    base.canonicalize();
    std::vector<Rational> weights(k + padding);
    for (std::size_t i = 0; i < k; ++i) {
        Rational root(Integer(static_cast<unsigned long>(uniform_int(1, max_numerator))),
                      Integer(static_cast<unsigned long>(uniform_int(1, max_denominator))));
        root.canonicalize();
        weights[i] = base * root * root;
    }
    for (std::size_t i = weights.size(); i > 1; --i) {
        std::swap(weights[i - 1], weights[static_cast<std::size_t>(uniform_int(0, i - 1))]);
    }
    for (auto& w : weights) {
        w.canonicalize();
    }
    return WeightProfile(std::move(weights));
}

std::string describe(const WeightProfile& p)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.dimension(); ++i) {
        os << (i ? ", " : "") << to_string(p[i]);
    }
    os << ')';
    return os.str();
}

namespace {

void record(SuiteResult& suite, bool ok, const std::string& witness)
{
    ++suite.checks;
    if (!ok) {
        ++suite.failures;
        suite.witnesses.push_back(witness);
    }
}

std::string witness(const WeightProfile& p, unsigned q, const Rational& lhs, const char* rel,
                    const Rational& rhs, const std::string& extra = {})
{
    std::ostringstream os;
    os << "profile=" << describe(p) << extra << " q=" << q << ": " << to_string(lhs) << ' '
       << rel << ' ' << to_string(rhs) << " violated";
    return os.str();
}

}  // namespace

SuiteResult run_formula_suite(const VerifyConfig& config)
{
    SuiteResult suite{"formula equivalence", 0, 0, {}};
    const ClosedForm closed = config.closed_form ? config.closed_form : ClosedForm(chaos_extreme_moment);
    for (unsigned long k = 1; k <= config.k_cap; ++k) {
        const auto flat = WeightProfile::flat(k);
        const auto law = chaos_law(flat, config.limits);
        for (unsigned q = 1; q <= config.q_cap; ++q) {
            const Rational oracle = moment(law, q);
            const Rational formula = closed(k, q);
            record(suite, oracle == formula, witness(flat, q, oracle, "==", formula));
        }
    }
    return suite;
}

SuiteResult run_schur_suite(const VerifyConfig& config)
{
    SuiteResult suite{"schur concavity", 0, 0, {}};
    ProfileSampler sampler(config.seed, 1);
    const unsigned q_top = std::min(8U, config.q_cap);
    for (std::size_t n = 0; n < config.pairs; ++n) {
        // One trailing zero half the time, so transfers into empty slots occur.
        const std::size_t padding = sampler.uniform_int(0, 1);
        WeightProfile p = sampler.profile(2, 10 - padding, padding);
        std::vector<std::pair<std::size_t, std::size_t>> candidates;
        for (std::size_t i = 0; i < p.dimension(); ++i) {
            for (std::size_t j = 0; j < p.dimension(); ++j) {
                if (p[i] > p[j]) {
                    candidates.emplace_back(i, j);
                }
            }
        }
        if (candidates.empty()) {
            // Flat without zeros: no transfer exists, draw again.
            --n;
            continue;
        }
        const auto [i, j] = candidates[sampler.uniform_int(0, candidates.size() - 1)];
        Rational t(Integer(static_cast<unsigned long>(sampler.uniform_int(1, 15))), Integer(16));
        t.canonicalize();
        const WeightProfile balanced = balancing_rotation(p, i, j, t);
        const auto before = chaos_law(p, config.limits);
        const auto after = chaos_law(balanced, config.limits);
        for (unsigned q = 2; q <= q_top; q += 2) {
            const Rational lo = moment(before, q);
            const Rational hi = moment(after, q);
            record(suite, lo <= hi,
                   witness(p, q, lo, "<=", hi, " balanced=" + describe(balanced)));
        }
    }
    return suite;
}

SuiteResult run_domination_suite(const VerifyConfig& config)
{
    SuiteResult suite{"moment domination", 0, 0, {}};
    ProfileSampler sampler(config.seed, 2);
    const unsigned q_top = std::min(8U, config.q_cap);
    for (std::size_t n = 0; n < config.domination_profiles; ++n) {
        // Every fifth profile is flat; integer roots keep the m-fold laws small.
        WeightProfile p = n % 5 == 0 ? WeightProfile::flat(sampler.uniform_int(1, 8),
                                                           Rational(Integer(static_cast<unsigned long>(sampler.uniform_int(1, 7)))))
                                     : sampler.profile(1, 8, sampler.uniform_int(0, 2), 4, 1);
        const bool flat = p.is_flat();
        for (unsigned long m = 1; m <= 3; ++m) {
            const auto law = distortion_law(p, m, config.limits);
            const DistortionMomentTable<Rational> bound(m, p.sparsity(), q_top);
            for (unsigned q = 2; q <= q_top; ++q) {
                const Rational exact = moment(law, q);
                const std::string extra = " m=" + std::to_string(m);
                if (flat) {
                    record(suite, exact == bound[q], witness(p, q, exact, "==", bound[q], extra));
                } else {
                    record(suite, exact <= bound[q], witness(p, q, exact, "<=", bound[q], extra));
                }
            }
        }
    }
    return suite;
}

SuiteResult run_khintchine_suite(const VerifyConfig& config)
{
    SuiteResult suite{"khintchine chain", 0, 0, {}};
    ProfileSampler sampler(config.seed, 3);
    const unsigned q_top = std::min(10U, config.q_cap);
    for (std::size_t n = 0; n < config.khintchine_profiles; ++n) {
        const WeightProfile p = sampler.profile(1, 10, sampler.uniform_int(0, 2));
        const WeightProfile flat = flatten(p);
        for (unsigned q = 2; q <= q_top; q += 2) {
            const Rational direct = khintchine_moment(p, q, config.limits.enumeration_cap);
            const Rational flattened = khintchine_moment(flat, q, config.limits.enumeration_cap);
            const Rational gaussian = gaussian_moment(p.total(), q);
            record(suite, direct <= flattened, witness(p, q, direct, "<=", flattened, " (flattened)"));
            record(suite, flattened <= gaussian, witness(p, q, flattened, "<=", gaussian, " (gaussian)"));
        }
    }
    return suite;
}

std::vector<SuiteResult> run_all_suites(const VerifyConfig& config)
{
    return {run_formula_suite(config), run_schur_suite(config), run_domination_suite(config),
            run_khintchine_suite(config)};
}

}  // namespace rproj
