#ifndef LIPT_SYSTEMS_HPP
#define LIPT_SYSTEMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lipt/boolfn.hpp"
#include "lipt/f2core.hpp"

namespace lipt {

/// Enumeration budget for kernel walks: 2^(n*(k-m)) points.
constexpr int kKernelBudgetBits = 26;

/// A forbidden induced system (M, sigma): no k-tuple x with Mx = 0 and
/// f(x_i) = sigma_i for all i. M is kept in RREF with rank = rows.
struct InducedSystem {
    F2Matrix m;           // RREF, full rank
    std::uint32_t sigma;  // bit i = sigma_{i+1}
    bool degenerate = false; // k <= 2 or reduced below Def-1 size; kept but flagged

    int k() const { return m.cols; }
    int rank() const { return m.rows; }
    std::string sigma_str() const { return F2Vector(sigma, m.cols).str(); }
};

enum class ValidationStatus {
    clean,             // valid as given (after rref)
    reduced,           // weight-2 reductions applied, clean result
    trivially_free,    // weight-2 with unequal sigma: no f can induce it
    value_forced,      // weight-1 in rowspace: forces f(0), near-trivial
    reduced_degenerate // reductions drove k to <= 2
};

struct ReductionStep {
    int kept_coordinate;    // i (0-based)
    int removed_coordinate; // j (0-based)
};

struct ValidationResult {
    ValidationStatus status = ValidationStatus::clean;
    std::optional<InducedSystem> system; // set for clean/reduced/reduced_degenerate
    std::vector<ReductionStep> steps;
    int forced_coordinate = -1; // for value_forced
    std::string note;

    bool usable() const {
        return status == ValidationStatus::clean || status == ValidationStatus::reduced;
    }
};

/// Normalizes M by rref, scans the rowspace for weight-1/weight-2 vectors and
/// applies the forced-value / trivially-free / substitution reductions.
ValidationResult validate(const F2Matrix& m, std::uint32_t sigma);

/// Builds an InducedSystem directly (rref applied); throws input_error if the
/// rowspace scan reports a degeneracy. Convenience for known-clean inputs.
InducedSystem make_system(const F2Matrix& m, std::uint32_t sigma);

/// Cauchy-Schwarz complexity: smallest c >= 1 such that for every i there is
/// a partition of the other coordinates into c+1 parts none of which sums
/// with e_i into the rowspace. k <= 12.
int complexity(const F2Matrix& m);

bool induces_at(const BooleanFunction& f, const InducedSystem& sys,
                const std::vector<F2Vector>& x);

/// Exact number of k-tuples x with Mx = 0 and f(x_i) = sigma_i, by
/// enumerating y in (F_2^n)^(k-m) and mapping x = Ky, K = kernel_basis(M).
std::uint64_t count_induced(const BooleanFunction& f, const InducedSystem& sys);

/// First inducing tuple in kernel-enumeration order, if any.
std::optional<std::vector<F2Vector>> find_witness(const BooleanFunction& f,
                                                  const InducedSystem& sys);

/// A named generator of systems (currently "rm": Reed-Muller degree d).
struct FamilyGenerator {
    std::string name;
    int d = 1;
    int max_k = 64; // realized systems keep k <= max_k
};

/// A possibly-infinite family: explicit systems plus named generators with a
/// size cutoff. realized() is what every operation actually runs on.
struct Family {
    std::vector<InducedSystem> explicit_systems;
    std::vector<FamilyGenerator> generators;

    std::vector<InducedSystem> realized() const;
    bool empty_realized() const { return realized().empty(); }
};

struct Witness {
    int system_index = -1;
    std::vector<F2Vector> x;
};

struct FreenessResult {
    bool free = true;
    std::optional<Witness> witness;
};

/// F-free: (M^i, sigma^i)-free for every realized system; on failure the
/// first witness found (by system order, then kernel order) is returned.
FreenessResult is_free(const BooleanFunction& f, const Family& fam);

/// Minimum distance(f, g) over all F-free g, by exhausting all 2^(2^n)
/// candidates; n <= 4.
Q distance_to_family(const BooleanFunction& f, const Family& fam);

/// mu: F_2^r -> {0,1,*}; values_ stores 0,1,2 per point with 2 = wildcard.
class PartialPattern {
  public:
    static constexpr std::uint8_t kStar = 2;

    explicit PartialPattern(int r) : r_(r), values_(size_t(1) << r, kStar) { require_dim(r); }

    int r() const { return r_; }
    std::uint8_t at(std::uint32_t u) const { return values_[u]; }
    void set(std::uint32_t u, std::uint8_t v) { values_[u] = v; }
    size_t size() const { return values_.size(); }

  private:
    int r_;
    std::vector<std::uint8_t> values_;
};

/// Exists x in (F_2^r)^k with Mx = 0 and mu(x_i) in {sigma_i, *} for all i.
bool partially_induces(const PartialPattern& mu, const InducedSystem& sys);

struct PsiResult {
    bool family_realized_empty = false;
    int value = 0; // max over mu in F_r of min matching k
};

/// Psi_F(r) over all 3^(2^r) patterns; r <= 3.
PsiResult psi(const Family& fam, int r);

} // namespace lipt

#endif
