#include "uninorm/grid.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace uninorm {

Grid sample_grid(const Realization& r, int resolution) {
    if (resolution < 2)
        throw DomainError("grid resolution must be at least 2");
    Grid g;
    g.term = term_to_string(r.term());
    g.resolution = resolution;
    g.values.resize(resolution);
    for (int i = 0; i < resolution; ++i) {
        g.values[i].resize(resolution);
        double x = (double)i / (resolution - 1);
        for (int j = 0; j < resolution; ++j)
            g.values[i][j] = r.eval(x, (double)j / (resolution - 1));
    }
    return g;
}

static std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(std::ostream& os, const Grid& g) {
    os << "# term=" << g.term << " resolution=" << g.resolution << "\n";
    for (const auto& row : g.values) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j)
                os << ",";
            os << fmt12(row[j]);
        }
        os << "\n";
    }
}

void write_pgm(std::ostream& os, const Grid& g) {
    os << "P2\n" << g.resolution << " " << g.resolution << "\n255\n";
    for (const auto& row : g.values) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j)
                os << " ";
            os << (int)std::lround(255.0 * row[j]);
        }
        os << "\n";
    }
}

nlohmann::ordered_json grid_to_json(const Grid& g) {
    nlohmann::ordered_json j;
    j["term"] = g.term;
    j["resolution"] = g.resolution;
    j["values"] = g.values;
    return j;
}

} // namespace uninorm
