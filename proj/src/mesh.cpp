#include "uqsg/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "uqsg/errors.hpp"

namespace uqsg {

Mesh Mesh::interval(double x_lo, double x_hi, int nx) {
    if (!(x_lo < x_hi) || nx < 1) throw ConfigurationError("invalid interval mesh");
    Mesh mesh;
    mesh.dim_ = 1;
    mesh.nx_ = nx;
    mesh.ny_ = 1;
    mesh.x_lo_ = x_lo;
    mesh.x_hi_ = x_hi;
    mesh.dx_ = (x_hi - x_lo) / nx;
    mesh.dy_ = 1.0;
    mesh.active_.assign(nx, 1);
    return mesh;
}

Mesh Mesh::box(double x_lo, double x_hi, int nx, double y_lo, double y_hi, int ny) {
    if (!(x_lo < x_hi) || !(y_lo < y_hi) || nx < 1 || ny < 1) {
        throw ConfigurationError("invalid box mesh");
    }
    Mesh mesh;
    mesh.dim_ = 2;
    mesh.nx_ = nx;
    mesh.ny_ = ny;
    mesh.x_lo_ = x_lo;
    mesh.x_hi_ = x_hi;
    mesh.y_lo_ = y_lo;
    mesh.y_hi_ = y_hi;
    mesh.dx_ = (x_hi - x_lo) / nx;
    mesh.dy_ = (y_hi - y_lo) / ny;
    mesh.active_.assign(static_cast<size_t>(nx) * ny, 1);
    return mesh;
}

int Mesh::active_cells() const {
    return static_cast<int>(std::count(active_.begin(), active_.end(), std::uint8_t{1}));
}

void Mesh::add_square_obstacle(const SquareObstacle& obstacle) {
    if (dim_ != 2) throw ConfigurationError("obstacles need a 2D mesh");
    if (!(obstacle.length > 0.0)) throw ConfigurationError("obstacle length must be positive");
    obstacles_.push_back(obstacle);
    apply_masks();
}

void Mesh::set_floor(double y) {
    if (dim_ != 2) throw ConfigurationError("a duct floor needs a 2D mesh");
    has_floor_ = true;
    floor_ = y;
    apply_masks();
}

void Mesh::apply_masks() {
    for (int iy = 0; iy < ny_; ++iy) {
        const double y = y_center(iy);
        for (int ix = 0; ix < nx_; ++ix) {
            const double x = x_center(ix);
            bool inside = has_floor_ && y < floor_;
            for (const auto& o : obstacles_) {
                const double half = 0.5 * o.length;
                if (std::abs(x - o.center_x) <= half && std::abs(y - o.center_y) <= half) {
                    inside = true;
                }
            }
            active_[index(ix, iy)] = inside ? 0 : 1;
        }
    }
}

Mesh Mesh::refined(int factor) const {
    if (factor < 1) throw ConfigurationError("refinement factor must be >= 1");
    Mesh fine = dim_ == 1 ? interval(x_lo_, x_hi_, nx_ * factor)
                          : box(x_lo_, x_hi_, nx_ * factor, y_lo_, y_hi_, ny_ * factor);
    fine.boundary_ = boundary_;
    fine.obstacles_ = obstacles_;
    fine.has_floor_ = has_floor_;
    fine.floor_ = floor_;
    if (dim_ == 2) fine.apply_masks();
    return fine;
}

}  // namespace uqsg
