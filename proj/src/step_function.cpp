#include "ids/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ids {

namespace {

double weight(double lambda) { return 1.0 / std::sqrt(std::abs(lambda) + 1.0); }

/// Sup of the weight over a piece [lo, hi) of the real line; +-inf allowed.
double piece_weight_sup(double lo, double hi) {
    if (lo <= 0.0 && 0.0 < hi) return 1.0;
    if (lo > 0.0) return weight(lo);
    return weight(hi);  // hi <= 0: sup approached at the right end
}

void format17(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values) {
    if (values.size() != breakpoints.size() + 1)
        throw std::invalid_argument("step function needs one more value than breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i - 1] < breakpoints[i]))
            throw std::invalid_argument("breakpoints must be strictly increasing");
    bp_.reserve(breakpoints.size());
    val_.reserve(values.size());
    val_.push_back(values[0]);
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (values[i + 1] == val_.back()) continue;  // redundant breakpoint
        bp_.push_back(breakpoints[i]);
        val_.push_back(values[i + 1]);
    }
}

StepFunction StepFunction::counting_from_sorted(std::span<const double> eigs) {
    std::vector<double> bp;
    std::vector<double> val{0.0};
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (i > 0 && eigs[i] < eigs[i - 1])
            throw std::invalid_argument("eigenvalue list must be non-decreasing");
        if (!bp.empty() && eigs[i] == bp.back()) {
            val.back() += 1.0;
        } else {
            bp.push_back(eigs[i]);
            val.push_back(val.back() + 1.0);
        }
    }
    StepFunction f;
    f.bp_ = std::move(bp);
    f.val_ = std::move(val);
    return f;
}

StepFunction StepFunction::from_atoms(std::vector<Jump> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Jump& a, const Jump& b) { return a.location < b.location; });
    StepFunction f;
    f.val_ = {0.0};
    for (const Jump& a : atoms) {
        if (a.height == 0.0) continue;
        if (!f.bp_.empty() && f.bp_.back() == a.location) {
            f.val_.back() += a.height;
        } else {
            f.bp_.push_back(a.location);
            f.val_.push_back(f.val_.back() + a.height);
        }
    }
    return f;
}

double StepFunction::operator()(double lambda) const {
    auto it = std::upper_bound(bp_.begin(), bp_.end(), lambda);
    return val_[static_cast<std::size_t>(it - bp_.begin())];
}

StepFunction StepFunction::combine(double a, const StepFunction& f, double b, const StepFunction& g,
                                   double tol) {
    StepFunction out;
    out.val_ = {a * f.val_[0] + b * g.val_[0]};
    std::size_t i = 0, j = 0;
    while (i < f.bp_.size() || j < g.bp_.size()) {
        double x;
        if (j >= g.bp_.size() || (i < f.bp_.size() && f.bp_[i] <= g.bp_[j]))
            x = f.bp_[i];
        else
            x = g.bp_[j];
        while (i < f.bp_.size() && f.bp_[i] == x) ++i;
        while (j < g.bp_.size() && g.bp_[j] == x) ++j;
        double v = a * f.val_[i] + b * g.val_[j];
        if (std::abs(v - out.val_.back()) <= tol) continue;
        out.bp_.push_back(x);
        out.val_.push_back(v);
    }
    return out;
}

double StepFunction::sup_distance(const StepFunction& g) const {
    double best = std::abs(val_[0] - g.val_[0]);
    std::size_t i = 0, j = 0;
    while (i < bp_.size() || j < g.bp_.size()) {
        double x;
        if (j >= g.bp_.size() || (i < bp_.size() && bp_[i] <= g.bp_[j]))
            x = bp_[i];
        else
            x = g.bp_[j];
        while (i < bp_.size() && bp_[i] == x) ++i;
        while (j < g.bp_.size() && g.bp_[j] == x) ++j;
        best = std::max(best, std::abs(val_[i] - g.val_[j]));
    }
    return best;
}

double StepFunction::sup_distance(const StepFunction& g, double a, double b) const {
    if (b < a) throw std::invalid_argument("window must satisfy a <= b");
    double best = std::abs((*this)(a) - g(a));
    std::vector<double> probes;
    for (double x : bp_)
        if (x > a && x <= b) probes.push_back(x);
    for (double x : g.bp_)
        if (x > a && x <= b) probes.push_back(x);
    for (double x : probes) best = std::max(best, std::abs((*this)(x) - g(x)));
    return best;
}

double StepFunction::weighted_sup_distance(const StepFunction& g) const {
    const double inf = std::numeric_limits<double>::infinity();
    double best = 0.0;
    std::size_t i = 0, j = 0;
    double lo = -inf;
    for (;;) {
        double hi;
        if (i < bp_.size() && (j >= g.bp_.size() || bp_[i] <= g.bp_[j]))
            hi = bp_[i];
        else if (j < g.bp_.size())
            hi = g.bp_[j];
        else
            hi = inf;
        double v = std::abs(val_[i] - g.val_[j]);
        if (v > 0.0) best = std::max(best, v * piece_weight_sup(lo, hi));
        if (hi == inf) break;
        lo = hi;
        while (i < bp_.size() && bp_[i] == hi) ++i;
        while (j < g.bp_.size() && g.bp_[j] == hi) ++j;
    }
    return best;
}

StepFunction StepFunction::restrict_to(double a, double b) const {
    if (b < a) throw std::invalid_argument("window must satisfy a <= b");
    StepFunction out;
    out.val_ = {(*this)(a)};
    for (std::size_t i = 0; i < bp_.size(); ++i) {
        if (bp_[i] <= a || bp_[i] > b) continue;
        if (val_[i + 1] == out.val_.back()) continue;
        out.bp_.push_back(bp_[i]);
        out.val_.push_back(val_[i + 1]);
    }
    return out;
}

JumpList StepFunction::jumps(double threshold) const {
    if (threshold <= 0) throw std::invalid_argument("jump threshold must be positive");
    JumpList out;
    for (std::size_t i = 0; i < bp_.size(); ++i) {
        double h = val_[i + 1] - val_[i];
        if (h >= threshold) out.push_back({bp_[i], h});
    }
    return out;
}

bool StepFunction::is_non_decreasing(double tol) const {
    for (std::size_t i = 0; i + 1 < val_.size(); ++i)
        if (val_[i + 1] < val_[i] - tol) return false;
    return true;
}

void StepFunction::write_csv(std::ostream& os) const {
    std::string line = "lambda,value\n-inf,";
    format17(line, val_[0]);
    line += '\n';
    os << line;
    for (std::size_t i = 0; i < bp_.size(); ++i) {
        line.clear();
        format17(line, bp_[i]);
        line += ',';
        format17(line, val_[i + 1]);
        line += '\n';
        os << line;
    }
}

StepFunction StepFunction::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "lambda,value")
        throw std::invalid_argument("bad step-function CSV header");
    std::vector<double> bp, val;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("bad step-function CSV row");
        std::string l = line.substr(0, comma);
        double v = std::stod(line.substr(comma + 1));
        if (first) {
            if (l != "-inf") throw std::invalid_argument("first CSV row must be -inf");
            val.push_back(v);
            first = false;
        } else {
            bp.push_back(std::stod(l));
            val.push_back(v);
        }
    }
    if (first) throw std::invalid_argument("empty step-function CSV");
    return StepFunction(std::move(bp), std::move(val));
}

}  // namespace ids
