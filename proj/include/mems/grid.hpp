#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

namespace mems {

enum class Shape { Interval, Ball };

/// Uniform finite-difference discretization of (0, L) or of a radially
/// symmetric ball B_R in R^n, n >= 2, with homogeneous Dirichlet data on the
/// outer boundary.
///
/// Interior nodes sit at (i+1)*h, i = 0..N-1, h = extent/(N+1); the boundary
/// value 0 is eliminated into the stencil. On the ball the Laplacian is the
/// conservative flux form
///     (Delta u)_i = [r_{i+1/2}^{n-1}(u_{i+1}-u_i) - r_{i-1/2}^{n-1}(u_i-u_{i-1})] / (r_i^{n-1} h^2)
/// and the node next to the origin uses the symmetry-limit row
/// (2n/3)(u_1 - u_0)/h^2, which is the flux form over the center cell
/// [0, 3h/2] and keeps second-order consistency at r = h.
///
/// Quadrature weights are chosen so that the weighted operator is exactly
/// self-adjoint: w_i = h on the interval, exact cell volumes on the ball
/// (omega * r_i^{n-1} h up to an O(h^2/r^2) correction; the center cell is
/// [0, 3h/2]). The weight sum approaches |Omega| at rate 1/(N+1) because the
/// outer half-cell [R - h/2, R] belongs to the boundary node; volume()
/// returns the exact measure for use in closed-form bounds.
class GridDomain {
public:
    static GridDomain interval(double length, int interior_nodes);
    static GridDomain ball(int dim, double radius, int interior_nodes);

    Shape shape() const { return shape_; }
    /// Space dimension: 1 for the interval, n for the ball.
    int dim() const { return dim_; }
    /// L or R.
    double extent() const { return extent_; }
    /// Interior node count N.
    int size() const { return n_; }
    double spacing() const { return h_; }

    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& nodes() const { return nodes_; }
    double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& weights() const { return weights_; }

    /// Exact |Omega| (not the weight sum).
    double volume() const { return volume_; }
    /// Exact |dOmega|: 2 for the interval, omega_{n-1} R^{n-1} for the ball.
    double boundary_measure() const { return boundary_; }

    /// Rows of the positive operator -Delta_h (tridiagonal).
    const std::vector<double>& op_sub() const { return op_sub_; }
    const std::vector<double>& op_diag() const { return op_diag_; }
    const std::vector<double>& op_sup() const { return op_sup_; }

    /// Structural identity; Fields interoperate only between equal grids.
    bool operator==(const GridDomain& other) const;
    bool operator!=(const GridDomain& other) const { return !(*this == other); }

private:
    GridDomain() = default;

    Shape shape_ = Shape::Interval;
    int dim_ = 1;
    double extent_ = 0.0;
    int n_ = 0;
    double h_ = 0.0;
    double volume_ = 0.0;
    double boundary_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> op_sub_, op_diag_, op_sup_;
};

/// Nodal values of a function vanishing on the outer boundary.
class Field {
public:
    Field() = default;
    Field(const GridDomain& dom, double fill = 0.0);

    /// Sample a function of the node coordinate (x on the interval, r on the ball).
    static Field sample(const GridDomain& dom, const std::function<double(double)>& fn);

    const GridDomain& domain() const;
    bool has_domain() const { return dom_ != nullptr; }
    int size() const { return static_cast<int>(v_.size()); }

    double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

    double max() const;
    double min() const;
    double sup_norm() const;

    Field& operator+=(const Field& rhs);
    Field& operator-=(const Field& rhs);
    Field& operator*=(double s);

private:
    const GridDomain* dom_ = nullptr;
    std::vector<double> v_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// Throws std::invalid_argument unless both fields live on equal grids.
void require_same_domain(const Field& a, const Field& b);
void require_domain(const GridDomain& dom, const Field& a);

/// Delta_h u with the homogeneous Dirichlet boundary folded in.
Field apply_laplacian(const GridDomain& dom, const Field& u);

/// Solves -Delta_h v = rhs (Thomas algorithm plus one step of iterative
/// refinement; residual is at roundoff of the evaluation).
Field solve_poisson(const GridDomain& dom, const Field& rhs);

/// Solves (alpha I - Delta_h + diag(extra)) v = rhs. alpha may be negative as
/// long as the shifted operator stays positive definite (Gershgorin-checked
/// by callers); used for implicit time steps and shifted inverse iteration.
Field solve_shifted(const GridDomain& dom, double alpha, const Field& rhs,
                    const Field* extra_diag = nullptr);

/// Weighted sum  sum_i w_i u_i  realizing the volume integral.
double integrate(const GridDomain& dom, const Field& u);
/// Weighted inner product sum_i w_i u_i v_i.
double inner(const GridDomain& dom, const Field& u, const Field& v);

/// Two columns (coordinate, value), 17 significant digits.
void write_field_csv(std::ostream& os, const Field& u);

} // namespace mems
