#include "signorini/grid.hpp"

#include <string>

#include "signorini/errors.hpp"

namespace signorini {

Grid::Grid(int dim, int nodes_per_axis, double half_width)
    : n_(dim), m_(nodes_per_axis), L_(half_width) {
    if (n_ != 2 && n_ != 3)
        throw InvalidArgument("Grid: dimension must be 2 or 3, got " + std::to_string(n_));
    if (m_ < 9)
        throw InvalidArgument("Grid: need at least 9 nodes per axis, got " + std::to_string(m_));
    if (m_ % 2 == 0)
        throw InvalidArgument("Grid: nodes per axis must be odd so that {x_n = 0} is a nodal layer, got " +
                              std::to_string(m_));
    if (!(L_ > 0.0))
        throw InvalidArgument("Grid: half width must be positive");
    h_ = 2.0 * L_ / (m_ - 1);
    mid_ = (m_ - 1) / 2;
    count_ = 1;
    for (int a = 0; a < n_; ++a) count_ *= static_cast<std::size_t>(m_);
}

std::size_t Grid::cell_count() const {
    std::size_t c = 1;
    for (int a = 0; a < n_; ++a) c *= static_cast<std::size_t>(m_ - 1);
    return c;
}

GridPtr make_grid(int dim, int nodes_per_axis, double half_width) {
    return std::make_shared<Grid>(dim, nodes_per_axis, half_width);
}

}  // namespace signorini
