#pragma once
// Colourings of Z^d by a finite alphabet: the randomness carrier of every model.

#include <cstdint>
#include <limits>
#include <vector>

#include "ids/geometry.hpp"

namespace ids {

enum class BCTag : std::uint8_t { Dirichlet, Neumann, Kirchhoff };

enum class PayloadKind { None, Potential, BoundaryTag, LengthVector };

/// Ordered finite symbol set with a uniform per-symbol model payload.
/// Potentials use +infinity as the deleted-site marker.
struct Alphabet {
    PayloadKind kind = PayloadKind::None;
    int bare_symbols = 0;                                    // kind == None
    std::vector<double> potentials;                          // kind == Potential
    std::vector<BCTag> tags;                                 // kind == BoundaryTag
    std::vector<std::array<double, kMaxDim>> length_vectors; // kind == LengthVector

    int size() const;
    void validate() const;

    static Alphabet none(int n);
    static Alphabet site_percolation();  // {deleted(+inf), occupied(0)}
    static Alphabet potentials_of(std::vector<double> v);
    static Alphabet bc_tags(std::vector<BCTag> t);
    static Alphabet lengths(std::vector<std::array<double, kMaxDim>> ls);
};

inline constexpr double kDeleted = std::numeric_limits<double>::infinity();

/// A map Z^d -> symbol ids. Procedural rules cover all of Z^d; explicit
/// arrays are defined on their region only. The iid rule is a pure function
/// of (seed, site), so random access and parallel evaluation are exact.
class Colouring {
  public:
    enum class Rule { Constant, Periodic, VisiblePoints, Iid, Explicit };

    static Colouring constant(int dim, std::uint8_t symbol, Alphabet a = {});
    static Colouring periodic(int dim, int period, std::vector<std::uint8_t> cell, Alphabet a = {});
    static Colouring visible_points(int dim, Alphabet a = {});
    static Colouring iid(int dim, std::vector<double> probs, std::uint64_t seed, Alphabet a = {});
    static Colouring explicit_array(Cube region, std::vector<std::uint8_t> data, Alphabet a = {});

    int dim() const { return dim_; }
    Rule rule() const { return rule_; }
    const Alphabet& alphabet() const { return alphabet_; }

    std::uint8_t at(const Site& s) const;

    /// Colouring c' with c'(x) = c(x - t).
    Colouring shifted(const Site& t) const;

  private:
    Colouring() = default;

    Rule rule_ = Rule::Constant;
    int dim_ = 1;
    Alphabet alphabet_;
    Site shift_{};  // applied as c(x - shift_)

    std::uint8_t constant_symbol_ = 0;
    int period_ = 1;
    std::vector<std::uint8_t> cell_;
    std::vector<double> cum_probs_;
    std::uint64_t seed_ = 0;
    Cube region_{};
    std::vector<std::uint8_t> data_;
};

/// SplitMix64 step; the basis of all counter-based randomness here.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic per-site uniform in [0,1) from (seed, site).
double site_uniform(std::uint64_t seed, const Site& s, int dim);

/// Hierarchical child seed (Monte-Carlo sample seeds and the like).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x9e3779b97f4a7c15ULL));
}

}  // namespace ids
