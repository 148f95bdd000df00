#include "signorini/field_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <memory>
#include <vector>

#include "signorini/errors.hpp"

namespace signorini {

namespace {
struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;
}  // namespace

void write_field(const std::string& path, const ScalarField& u) {
    FilePtr f(std::fopen(path.c_str(), "w"));
    if (!f) throw IoError("write_field: cannot open " + path);
    const Grid& g = u.grid();
    std::fprintf(f.get(), "%d %d %.17g %d\n", g.dim(), g.nodes_per_axis(), g.half_width(),
                 u.symmetric() ? 1 : 0);
    for (double v : u.values()) std::fprintf(f.get(), "%.17g\n", v);
}

ScalarField read_field(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "r"));
    if (!f) throw IoError("read_field: cannot open " + path);
    int n = 0, m = 0, sym = 0;
    double L = 0.0;
    if (std::fscanf(f.get(), "%d %d %lg %d", &n, &m, &L, &sym) != 4)
        throw IoError("read_field: bad header in " + path);
    GridPtr grid = make_grid(n, m, L);
    std::vector<double> vals(grid->node_count());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (std::fscanf(f.get(), "%lg", &vals[i]) != 1)
            throw IoError("read_field: truncated data in " + path);
    }
    return ScalarField(grid, std::move(vals), sym != 0);
}

}  // namespace signorini
