#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rce::ensemble {

/// Two-class label, stored as -1 / +1.
enum class Label : std::int8_t { Neg = -1, Pos = 1 };

constexpr int value(Label l) noexcept { return static_cast<int>(l); }
constexpr Label negate(Label l) noexcept { return l == Label::Pos ? Label::Neg : Label::Pos; }

using LabelVector = std::vector<Label>;

/// Exact non-negative fraction num / den, den > 0. Equality and ordering are by value.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational reduced() const;
    double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;  ///< reduced "a/b", or "a" when b == 1

    friend bool operator==(const Rational& a, const Rational& b) noexcept { return a.num * b.den == b.num * a.den; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
        return a.num * b.den <=> b.num * a.den;
    }
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Expected labels O (length k) and component outputs F (N rows of length k).
/// Indices are 0-based throughout this namespace.
class VoteInstance {
  public:
    /// Throws std::invalid_argument if there are no components or samples, or a row length differs from O.
    VoteInstance(LabelVector expected, std::vector<LabelVector> outputs);

    std::size_t n_components() const noexcept { return outputs_.size(); }
    std::size_t n_samples() const noexcept { return expected_.size(); }
    const LabelVector& expected() const noexcept { return expected_; }
    const std::vector<LabelVector>& outputs() const noexcept { return outputs_; }
    Label expected(std::size_t j) const { return expected_.at(j); }
    Label output(std::size_t i, std::size_t j) const { return outputs_.at(i).at(j); }

    /// Copy with row `e` replaced. Throws BoundsError on bad index or length.
    VoteInstance with_row(std::size_t e, LabelVector replacement) const;

    friend bool operator==(const VoteInstance&, const VoteInstance&) = default;

  private:
    LabelVector expected_;
    std::vector<LabelVector> outputs_;
};

/// Error(x) for x in {-1, 0, +1}: 1 for a wrong answer, 0 for a right one.
/// A tie (x == 0) counts as an error.
constexpr int error_of(int product) noexcept { return product > 0 ? 0 : 1; }

constexpr int sgn(int x) noexcept { return (x > 0) - (x < 0); }

/// E_i: fraction of samples where component i disagrees with O.
Rational component_error(const VoteInstance& inst, std::size_t i);
/// S_j = sum over components of f_ij.
int vote_sum(const VoteInstance& inst, std::size_t j);
/// sgn(S_j): -1, 0 (tie) or +1.
int ensemble_output(const VoteInstance& inst, std::size_t j);
/// Ê = (1/k) sum_j Error(sgn(S_j) o_j).
Rational ensemble_error(const VoteInstance& inst);
std::size_t tie_count(const VoteInstance& inst);

/// Independent recount of Ê: tallies yes/no votes per sample and compares
/// the majority label against O directly, with no sums or sign function.
Rational brute_force_error(const VoteInstance& inst);

struct SubstitutionReport {
    std::size_t index_e = 0;
    Rational error_before;
    Rational error_after;
    /// Per sample: Error(f'_j o_j) <= Error(f_j o_j).
    std::vector<bool> per_sample_ok;
    bool benefit = false;  ///< error_after <= error_before
    std::size_t tie_count_before = 0;
    std::size_t tie_count_after = 0;

    bool all_samples_ok() const noexcept;
};

/// Replaces component e's outputs and compares ensemble error before and after.
/// Throws BoundsError on bad index or replacement length, and std::logic_error
/// if every per-sample check passes but the aggregate does not improve.
SubstitutionReport substitute_and_compare(const VoteInstance& inst, std::size_t e, const LabelVector& replacement);

struct SubstitutionCandidate {
    LabelVector replacement;
    SubstitutionReport report;
};

inline constexpr std::size_t kMaxSearchSamples = 20;

/// All 2^k replacements of row e that strictly lower Ê, sorted by Ê' then by
/// replacement (-1 before +1, left to right). Throws std::invalid_argument if
/// k > kMaxSearchSamples.
std::vector<SubstitutionCandidate> search_beneficial_substitutions(const VoteInstance& inst, std::size_t e);

// Text format:
//   line 1:  N k
//   line 2:  k labels (O)
//   next N:  k labels each (F_1 .. F_N)
// Labels are "+1", "1" or "-1". Blank lines and '#' comments are skipped.
// Errors throw rce::ParseError with 1-based line and column.
VoteInstance parse_instance(std::istream& in);
/// A single line of labels; if `expected_length` is nonzero the count must match.
LabelVector parse_label_vector(std::istream& in, std::size_t expected_length = 0);
void write_instance(std::ostream& out, const VoteInstance& inst);
std::string format_labels(const LabelVector& labels);  ///< "[+1,-1,...]"

}  // namespace rce::ensemble
