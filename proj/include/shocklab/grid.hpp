#pragma once

#include <vector>

#include "shocklab/errors.hpp"
#include "shocklab/state.hpp"

namespace shocklab {

struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_cells = 0;

    double dx() const { return (x_max - x_min) / n_cells; }
    double left_edge(int i) const { return x_min + i * dx(); }
    double center(int i) const { return x_min + (i + 0.5) * dx(); }

    int cell_of(double x) const {
        int i = static_cast<int>((x - x_min) / dx());
        if (i < 0) i = 0;
        if (i >= n_cells) i = n_cells - 1;
        return i;
    }

    void validate() const {
        if (n_cells < 8) fail(ErrorCode::config, "grid: need at least 8 cells");
        if (!(x_max > x_min)) fail(ErrorCode::config, "grid: x_max must exceed x_min");
    }
};

/// Finite-volume cell averages of the conserved variables at one time.
struct FieldSnapshot {
    double time = 0.0;
    Grid1D grid;
    std::vector<StateVector> cells;
};

} // namespace shocklab
