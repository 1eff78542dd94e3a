#pragma once
// Right-continuous step functions: eigenvalue counting functions, IDS
// curves, and spectral shift functions, with the sup and weighted norms.

#include <iosfwd>
#include <span>
#include <vector>

namespace ids {

struct Jump {
    double location;
    double height;  // > 0
};
using JumpList = std::vector<Jump>;

class StepFunction {
  public:
    /// The zero function.
    StepFunction() : val_{0.0} {}

    /// f == values[i] on [bp[i-1], bp[i]), values has one more entry than bp.
    StepFunction(std::vector<double> breakpoints, std::vector<double> values);

    static StepFunction zero() { return StepFunction(); }
    static StepFunction unit_jump(double at) { return StepFunction({at}, {0.0, 1.0}); }

    /// f(lambda) = #{i : eigs_i <= lambda}. Input must be non-decreasing.
    static StepFunction counting_from_sorted(std::span<const double> eigs);

    /// Sum of upward jumps (location, height); heights may repeat locations.
    static StepFunction from_atoms(std::vector<Jump> atoms);

    const std::vector<double>& breakpoints() const { return bp_; }
    const std::vector<double>& values() const { return val_; }
    double leading_value() const { return val_.front(); }
    double trailing_value() const { return val_.back(); }

    double operator()(double lambda) const;

    /// Pointwise a*f + b*g. Breakpoints where adjacent values differ by no
    /// more than `tol` are dropped (0 keeps integer functions exact).
    static StepFunction combine(double a, const StepFunction& f, double b, const StepFunction& g,
                                double tol = 1e-12);

    StepFunction scaled(double a) const { return combine(a, *this, 0.0, zero(), 0.0); }

    /// sup over R of |f - g|, exact over the merged piece partition.
    double sup_distance(const StepFunction& g) const;
    /// sup over [a, b] of |f - g|.
    double sup_distance(const StepFunction& g, double a, double b) const;
    /// sup over R of |f - g| / sqrt(|lambda| + 1).
    double weighted_sup_distance(const StepFunction& g) const;

    /// Same values on [a, b]; constant f(a) before a and f(b) after b.
    StepFunction restrict_to(double a, double b) const;

    JumpList jumps(double threshold) const;

    bool is_non_decreasing(double tol = 0.0) const;

    /// CSV rows `lambda,value`; leading row `-inf,v0`; 17 significant digits.
    void write_csv(std::ostream& os) const;
    static StepFunction read_csv(std::istream& is);

  private:
    std::vector<double> bp_;
    std::vector<double> val_;
};

}  // namespace ids
