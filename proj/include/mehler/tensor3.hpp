#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace mehler {

// Dense symmetric 3-tensor on R^r (whitened H-coordinates). The injective
// norm sup_{|u|=1} |T(u,u,u)| (valid for symmetric tensors) is reported as a
// certified lower bound; inequality checks add a 5% safety factor on top.
class SymTensor3 {
public:
    explicit SymTensor3(int r);

    int dim() const { return r_; }
    double& at(int i, int j, int k);
    double at(int i, int j, int k) const;

    double maxAsymmetry() const; // max |T_ijk - T_perm(ijk)|
    double maxAbs() const;
    double maxAbsDiff(const SymTensor3& other) const;

    Eigen::VectorXd applyTwice(const Eigen::VectorXd& u) const; // v_i = T_ijk u_j u_k
    double cubic(const Eigen::VectorXd& u) const;               // T(u,u,u)

    // Best of shifted symmetric power iteration (restarts seeded random unit
    // starts) and a dense sphere scan for r <= 3.
    double normLowerBound(std::uint64_t seed = 1234, int restarts = 64) const;

private:
    int r_;
    std::vector<double> a_; // row-major r^3
};

} // namespace mehler
