#include "rce/ensemble.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "rce/errors.hpp"

namespace rce::ensemble {

Rational Rational::reduced() const {
    const std::int64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::to_string() const {
    const Rational r = reduced();
    return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

VoteInstance::VoteInstance(LabelVector expected, std::vector<LabelVector> outputs)
    : expected_(std::move(expected)), outputs_(std::move(outputs)) {
    if (expected_.empty()) throw std::invalid_argument("vote instance needs at least one sample");
    if (outputs_.empty()) throw std::invalid_argument("vote instance needs at least one component");
    for (std::size_t i = 0; i < outputs_.size(); ++i) {
        if (outputs_[i].size() != expected_.size()) {
            throw std::invalid_argument("component " + std::to_string(i + 1) + " has " +
                                        std::to_string(outputs_[i].size()) + " outputs, expected " +
                                        std::to_string(expected_.size()));
        }
    }
}

VoteInstance VoteInstance::with_row(std::size_t e, LabelVector replacement) const {
    if (e >= outputs_.size()) {
        throw BoundsError("component index " + std::to_string(e + 1) + " outside 1.." + std::to_string(outputs_.size()));
    }
    if (replacement.size() != expected_.size()) {
        throw BoundsError("replacement has " + std::to_string(replacement.size()) + " labels, expected " +
                          std::to_string(expected_.size()));
    }
    VoteInstance copy = *this;
    copy.outputs_[e] = std::move(replacement);
    return copy;
}

namespace {

void check_sample(const VoteInstance& inst, std::size_t j) {
    if (j >= inst.n_samples()) {
        throw BoundsError("sample index " + std::to_string(j + 1) + " outside 1.." + std::to_string(inst.n_samples()));
    }
}

Rational over_k(std::size_t errors, const VoteInstance& inst) {
    return {static_cast<std::int64_t>(errors), static_cast<std::int64_t>(inst.n_samples())};
}

}  // namespace

Rational component_error(const VoteInstance& inst, std::size_t i) {
    if (i >= inst.n_components()) {
        throw BoundsError("component index " + std::to_string(i + 1) + " outside 1.." +
                          std::to_string(inst.n_components()));
    }
    std::size_t errors = 0;
    for (std::size_t j = 0; j < inst.n_samples(); ++j) {
        errors += static_cast<std::size_t>(error_of(value(inst.output(i, j)) * value(inst.expected(j))));
    }
    return over_k(errors, inst);
}

int vote_sum(const VoteInstance& inst, std::size_t j) {
    check_sample(inst, j);
    int sum = 0;
    for (const auto& row : inst.outputs()) sum += value(row[j]);
    return sum;
}

int ensemble_output(const VoteInstance& inst, std::size_t j) { return sgn(vote_sum(inst, j)); }

Rational ensemble_error(const VoteInstance& inst) {
    std::size_t errors = 0;
    for (std::size_t j = 0; j < inst.n_samples(); ++j) {
        errors += static_cast<std::size_t>(error_of(ensemble_output(inst, j) * value(inst.expected(j))));
    }
    return over_k(errors, inst);
}

std::size_t tie_count(const VoteInstance& inst) {
    std::size_t ties = 0;
    for (std::size_t j = 0; j < inst.n_samples(); ++j) ties += vote_sum(inst, j) == 0 ? 1 : 0;
    return ties;
}

Rational brute_force_error(const VoteInstance& inst) {
    std::size_t wrong = 0;
    for (std::size_t j = 0; j < inst.n_samples(); ++j) {
        std::size_t agree = 0;
        std::size_t disagree = 0;
        for (const auto& row : inst.outputs()) {
            if (row[j] == inst.expected()[j]) {
                ++agree;
            } else {
                ++disagree;
            }
        }
        // Correct only with a strict majority for the expected label.
        if (!(agree > disagree)) ++wrong;
    }
    return over_k(wrong, inst);
}

bool SubstitutionReport::all_samples_ok() const noexcept {
    return std::all_of(per_sample_ok.begin(), per_sample_ok.end(), [](bool ok) { return ok; });
}

SubstitutionReport substitute_and_compare(const VoteInstance& inst, std::size_t e, const LabelVector& replacement) {
    const VoteInstance after = inst.with_row(e, replacement);

    SubstitutionReport report;
    report.index_e = e;
    report.error_before = ensemble_error(inst);
    report.error_after = ensemble_error(after);
    report.tie_count_before = tie_count(inst);
    report.tie_count_after = tie_count(after);
    report.per_sample_ok.resize(inst.n_samples());
    for (std::size_t j = 0; j < inst.n_samples(); ++j) {
        const int o = value(inst.expected(j));
        // S_j without component e, plus the replacement vote.
        const int rest = vote_sum(inst, j) - value(inst.output(e, j));
        const int before = error_of(sgn(rest + value(inst.output(e, j))) * o);
        const int now = error_of(sgn(rest + value(replacement[j])) * o);
        report.per_sample_ok[j] = now <= before;
    }
    report.benefit = report.error_after <= report.error_before;
    if (report.all_samples_ok() && !report.benefit) {
        throw std::logic_error("summation lemma violated: every sample improved but the ensemble error grew");
    }
    return report;
}

std::vector<SubstitutionCandidate> search_beneficial_substitutions(const VoteInstance& inst, std::size_t e) {
    const std::size_t k = inst.n_samples();
    if (k > kMaxSearchSamples) {
        throw std::invalid_argument("exhaustive search needs k <= " + std::to_string(kMaxSearchSamples) + ", got " +
                                    std::to_string(k));
    }
    if (e >= inst.n_components()) {
        throw BoundsError("component index " + std::to_string(e + 1) + " outside 1.." +
                          std::to_string(inst.n_components()));
    }
    const Rational baseline = ensemble_error(inst);
    std::vector<SubstitutionCandidate> found;
    LabelVector candidate(k);
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        for (std::size_t j = 0; j < k; ++j) candidate[j] = (mask >> j) & 1u ? Label::Pos : Label::Neg;
        if (ensemble_error(inst.with_row(e, candidate)) < baseline) {
            found.push_back({candidate, substitute_and_compare(inst, e, candidate)});
        }
    }
    std::sort(found.begin(), found.end(), [](const SubstitutionCandidate& a, const SubstitutionCandidate& b) {
        if (a.report.error_after != b.report.error_after) return a.report.error_after < b.report.error_after;
        return a.replacement < b.replacement;
    });
    return found;
}

}  // namespace rce::ensemble
