#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace uqsg {

enum class BoundaryKind { Dirichlet, SlipWall };

enum class Side { Left = 0, Right = 1, Bottom = 2, Top = 3 };

struct SquareObstacle {
    double center_x;
    double center_y;
    double length;
};

/// Uniform Cartesian mesh on [x_lo, x_hi] (x [y_lo, y_hi] in 2D).
///
/// Obstacles are staircase sets of inactive cells (cell centers inside the
/// square); faces between active and inactive cells are slip walls. Cells
/// are numbered j = ix + nx * iy.
class Mesh {
public:
    static Mesh interval(double x_lo, double x_hi, int nx);
    static Mesh box(double x_lo, double x_hi, int nx, double y_lo, double y_hi, int ny);

    int dimension() const { return dim_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int cells() const { return nx_ * ny_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    double y_lo() const { return y_lo_; }
    double y_hi() const { return y_hi_; }
    /// Cell length (1D) or area (2D).
    double cell_volume() const { return dim_ == 1 ? dx_ : dx_ * dy_; }

    int index(int ix, int iy = 0) const { return ix + nx_ * iy; }
    int ix(int j) const { return j % nx_; }
    int iy(int j) const { return j / nx_; }
    double x_center(int ix) const { return x_lo_ + (ix + 0.5) * dx_; }
    double y_center(int iy) const { return dim_ == 1 ? 0.0 : y_lo_ + (iy + 0.5) * dy_; }

    bool active(int j) const { return active_[j] != 0; }
    int active_cells() const;

    BoundaryKind boundary(Side side) const { return boundary_[static_cast<int>(side)]; }
    void set_boundary(Side side, BoundaryKind kind) { boundary_[static_cast<int>(side)] = kind; }

    /// Deactivates cells whose centers lie in the closed square.
    void add_square_obstacle(const SquareObstacle& obstacle);
    /// Deactivates cells whose centers lie below y (duct floor).
    void set_floor(double y);

    const std::vector<SquareObstacle>& obstacles() const { return obstacles_; }
    bool has_floor() const { return has_floor_; }
    double floor() const { return floor_; }

    /// Same geometry with every cell split into factor (x factor in 2D) cells.
    Mesh refined(int factor) const;

private:
    void apply_masks();

    int dim_ = 1;
    int nx_ = 1;
    int ny_ = 1;
    double x_lo_ = 0.0, x_hi_ = 1.0, y_lo_ = 0.0, y_hi_ = 1.0;
    double dx_ = 1.0, dy_ = 1.0;
    std::vector<std::uint8_t> active_;
    std::array<BoundaryKind, 4> boundary_{BoundaryKind::Dirichlet, BoundaryKind::Dirichlet,
                                          BoundaryKind::Dirichlet, BoundaryKind::Dirichlet};
    std::vector<SquareObstacle> obstacles_;
    bool has_floor_ = false;
    double floor_ = 0.0;
};

}  // namespace uqsg
