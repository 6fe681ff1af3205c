#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coh_ring.hpp"

namespace gammaint {

/// Everything derived from a stacky fan (and optional nef partition) that the other modules need.
class ToricModel {
public:
    ToricModel(StackyFan fan, const std::vector<ZVec>& nef_lifts = {}, const std::vector<SectorSpec>& sectors = {},
               const std::vector<std::vector<size_t>>& partition = {})
        : fan_(std::move(fan)) {
        validate_fan(fan_);
        box_ = BoxTable(fan_);
        lattice_ = ExtendedLattice(fan_, box_, nef_lifts);
        ring_ = OrbifoldRing(fan_, box_, sectors);
        if (!partition.empty()) partition_ = make_nef_partition(fan_, box_, partition);
        for (size_t a = 0; a < lattice_.k(); ++a) {
            QVec x = to_qvec(lattice_.nef_lifts()[a]);
            p_bar_.push_back(ring_.untwisted_from_divisor(x));
        }
    }
    ToricModel(const ToricModel&) = delete;
    ToricModel& operator=(const ToricModel&) = delete;

    const StackyFan& fan() const { return fan_; }
    const BoxTable& box() const { return box_; }
    const ExtendedLattice& lattice() const { return lattice_; }
    const OrbifoldRing& ring() const { return ring_; }
    const std::optional<NefPartition>& partition() const { return partition_; }
    size_t n() const { return fan_.n; }
    size_t k() const { return lattice_.k(); }
    size_t r() const { return lattice_.r(); }
    size_t codim() const { return partition_ ? partition_->c() : 0; }

    /// Images in H^2(X) of the nef basis (untwisted coordinates).
    const std::vector<QVec>& p_bar() const { return p_bar_; }

    /// First Chern class of X as an untwisted element.
    QVec c1() const { return ring_.untwisted_from_divisor(QVec(fan_.m(), Rational(1))); }

    /// Lift of rho-hat_Y: (1,...,1) minus the partition functionals.
    QVec rho_lift() const {
        QVec x(fan_.N(), Rational(1));
        if (partition_)
            for (const auto& l : partition_->lifts) x = sub(x, l);
        return x;
    }
    /// c_1(Y) pulled back to X (= c_1(X) - sum xi_j).
    QVec c1_Y() const {
        QVec c = c1();
        if (partition_)
            for (const auto& d : partition_->divisors) c = sub(c, ring_.untwisted_from_divisor(d));
        return c;
    }
    /// Untwisted class xi_j.
    QVec xi(size_t j) const { return ring_.untwisted_from_divisor(partition_->divisors[j]); }
    /// Euler class of V as an untwisted element.
    QVec euler_V() const {
        QVec e(ring_.untwisted().dim, Rational(0));
        e[0] = 1;
        if (partition_)
            for (size_t j = 0; j < partition_->c(); ++j) e = ring_.local_mul<Rational>(0, e, xi(j));
        return e;
    }

private:
    StackyFan fan_;
    BoxTable box_;
    ExtendedLattice lattice_;
    OrbifoldRing ring_;
    std::optional<NefPartition> partition_;
    std::vector<QVec> p_bar_;
};

} // namespace gammaint
