#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "revhardy/errors.hpp"
#include "revhardy/extended_real.hpp"
#include "revhardy/intervals.hpp"

namespace revhardy {

struct Atom {
    double position;
    double mass;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Computable non-negative Borel measure on an open interval: finitely many
/// atoms plus a piecewise-constant density with bounded support. The domain
/// may be unbounded; the density support never is.
class Measure {
public:
    Measure(Interval domain, std::vector<Atom> atoms,
            std::vector<double> density_breaks, std::vector<double> density_values)
        : domain_(domain),
          atoms_(std::move(atoms)),
          dbreaks_(std::move(density_breaks)),
          dvalues_(std::move(density_values)) {
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (!domain_.contains(atoms_[i].position))
                throw DomainError("Measure: atom outside the open interval");
            if (!(atoms_[i].mass > 0.0))
                throw DomainError("Measure: atom masses must be > 0");
            if (i > 0 && !(atoms_[i - 1].position < atoms_[i].position))
                throw DomainError("Measure: atom positions must strictly increase");
        }
        if (dbreaks_.empty() ? !dvalues_.empty()
                             : dvalues_.size() != dbreaks_.size() - 1)
            throw DomainError("Measure: need n+1 density breaks for n values");
        for (std::size_t i = 0; i < dbreaks_.size(); ++i) {
            if (!std::isfinite(dbreaks_[i]))
                throw DomainError("Measure: density support must be bounded");
            if (dbreaks_[i] < domain_.a || dbreaks_[i] > domain_.b)
                throw DomainError("Measure: density breaks outside the interval");
            if (i > 0 && !(dbreaks_[i - 1] < dbreaks_[i]))
                throw DomainError("Measure: density breaks must strictly increase");
        }
        for (double v : dvalues_)
            if (!(v >= 0.0)) throw DomainError("Measure: density must be >= 0");
    }

    static Measure lebesgue(Interval domain) {
        if (std::isinf(domain.a) || std::isinf(domain.b))
            throw DomainError("Measure: Lebesgue needs a bounded interval");
        return Measure(domain, {}, {domain.a, domain.b}, {1.0});
    }

    static Measure atoms_only(Interval domain, std::vector<Atom> atoms) {
        return Measure(domain, std::move(atoms), {}, {});
    }

    static Measure zero(Interval domain) { return Measure(domain, {}, {}, {}); }

    const Interval& domain() const { return domain_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<double>& density_breaks() const { return dbreaks_; }
    const std::vector<double>& density_values() const { return dvalues_; }

    bool is_zero() const {
        return atoms_.empty() &&
               std::all_of(dvalues_.begin(), dvalues_.end(),
                           [](double v) { return v == 0.0; });
    }

    /// Density on the open piece immediately right of x; 0 outside the support.
    double density_right_of(double x) const {
        if (dbreaks_.empty() || x < dbreaks_.front() || x >= dbreaks_.back())
            return 0.0;
        auto it = std::upper_bound(dbreaks_.begin(), dbreaks_.end(), x);
        return dvalues_[static_cast<std::size_t>(it - dbreaks_.begin()) - 1];
    }

    double atom_mass_at(double x) const {
        auto it = std::lower_bound(
            atoms_.begin(), atoms_.end(), x,
            [](const Atom& a, double v) { return a.position < v; });
        return (it != atoms_.end() && it->position == x) ? it->mass : 0.0;
    }

    /// Lebesgue integral of the density over (l, r); endpoint closure is
    /// immaterial here.
    double density_integral(double l, double r) const {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < dbreaks_.size(); ++i) {
            double lo = std::max(dbreaks_[i], l);
            double hi = std::min(dbreaks_[i + 1], r);
            if (hi > lo) total += dvalues_[i] * (hi - lo);
        }
        return total;
    }

    ExtReal mass(const EndpointedInterval& e) const {
        if (!e.within(domain_))
            throw DomainError("Measure::mass: interval outside the open interval");
        if (e.empty()) return ExtReal(0.0);
        double total = density_integral(e.left, e.right);
        for (const Atom& at : atoms_)
            if (e.contains(at.position)) total += at.mass;
        return ExtReal(total);
    }

    ExtReal total_mass() const {
        return mass(EndpointedInterval::open(domain_.a, domain_.b));
    }

    /// Positions where the measure's description changes: atoms and density
    /// breaks, sorted and deduplicated.
    std::vector<double> structural_breaks() const {
        std::vector<double> out;
        out.reserve(atoms_.size() + dbreaks_.size());
        for (const Atom& at : atoms_) out.push_back(at.position);
        out.insert(out.end(), dbreaks_.begin(), dbreaks_.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    Measure reflected() const {
        std::vector<Atom> ra(atoms_.rbegin(), atoms_.rend());
        for (Atom& at : ra) at.position = -at.position;
        std::vector<double> rb(dbreaks_.rbegin(), dbreaks_.rend());
        for (double& x : rb) x = -x;
        std::vector<double> rv(dvalues_.rbegin(), dvalues_.rend());
        return Measure(domain_.reflected(), std::move(ra), std::move(rb),
                       std::move(rv));
    }

    friend bool operator==(const Measure&, const Measure&) = default;

private:
    Interval domain_;
    std::vector<Atom> atoms_;
    std::vector<double> dbreaks_;
    std::vector<double> dvalues_;
};

}  // namespace revhardy
