#pragma once

#include <iosfwd>

#include "uninorm/realize.hpp"

namespace uninorm {

/// values[i][j] = eval(i/(n-1), j/(n-1)), so rows walk the first
/// argument and columns the second.
struct Grid {
    std::string term;
    int resolution = 0;
    std::vector<std::vector<double>> values;
};

Grid sample_grid(const Realization& r, int resolution);

/// One comment line "# term=<dsl> resolution=<n>", then resolution rows
/// of comma separated %.12g values.
void write_csv(std::ostream& os, const Grid& g);

/// Plain PGM (P2), 255 grays, one image row per grid row.
void write_pgm(std::ostream& os, const Grid& g);

nlohmann::ordered_json grid_to_json(const Grid& g);

} // namespace uninorm
