#include "scov/field_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace scov {

namespace {

const char* norm_name(Normalization n) {
    return n == Normalization::EXP_U ? "exp_u" : "exp_2v";
}

Normalization parse_norm(const std::string& s) {
    if (s == "exp_u") return Normalization::EXP_U;
    if (s == "exp_2v") return Normalization::EXP_2V;
    throw std::runtime_error("field snapshot: unknown normalization " + s);
}

void write_values(std::ostream& os, const Grid2D& g,
                  const std::vector<double>& v) {
    os.precision(std::numeric_limits<double>::max_digits10);
    for (int j = 0; j <= g.ny; ++j) {
        for (int i = 0; i <= g.nx; ++i) {
            if (i) os << ' ';
            os << v[g.node_id(i, j)];
        }
        os << '\n';
    }
}

std::vector<double> read_values(std::istream& is, const Grid2D& g) {
    std::vector<double> v(g.node_count());
    for (std::size_t n = 0; n < v.size(); ++n)
        if (!(is >> v[n]))
            throw std::runtime_error("field snapshot: truncated value table");
    return v;
}

} // namespace

void save_field(std::ostream& os, const PlanarField& f) {
    validate_field(f);
    os.precision(std::numeric_limits<double>::max_digits10);
    os << "scov-field 1\n";
    os << "norm " << norm_name(f.norm) << '\n';
    os << "grid " << f.grid.x0 << ' ' << f.grid.y0 << ' ' << f.grid.width
       << ' ' << f.grid.height << ' ' << f.grid.nx << ' ' << f.grid.ny
       << '\n';
    switch (f.mask_kind) {
    case MaskKind::FULL_RECT:
        os << "shape rect\n";
        break;
    case MaskKind::DISK:
        os << "shape disk " << f.disk.cx << ' ' << f.disk.cy << ' ' << f.disk.R
           << '\n';
        break;
    case MaskKind::LEVEL_SET:
        os << "shape levelset " << f.level << ' ' << (f.base_is_disk ? 1 : 0)
           << ' ' << f.base_disk.cx << ' ' << f.base_disk.cy << ' '
           << f.base_disk.R << '\n';
        break;
    }
    os << "values\n";
    write_values(os, f.grid, f.values);
    os << "mask\n";
    for (int j = 0; j <= f.grid.ny; ++j) {
        for (int i = 0; i <= f.grid.nx; ++i)
            os << (f.mask[f.grid.node_id(i, j)] ? '1' : '0');
        os << '\n';
    }
    if (f.mask_kind == MaskKind::LEVEL_SET) {
        os << "gap\n";
        write_values(os, f.grid, f.level_gap);
    }
    os << "end\n";
}

void save_field_file(const std::string& path, const PlanarField& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    save_field(os, f);
    if (!os) throw std::runtime_error("write failed: " + path);
}

PlanarField load_field(std::istream& is) {
    std::string tag;
    int version = 0;
    if (!(is >> tag >> version) || tag != "scov-field" || version != 1)
        throw std::runtime_error("field snapshot: bad header");

    PlanarField f;
    std::string key;
    if (!(is >> key) || key != "norm")
        throw std::runtime_error("field snapshot: missing norm");
    std::string norm;
    is >> norm;
    f.norm = parse_norm(norm);

    if (!(is >> key) || key != "grid")
        throw std::runtime_error("field snapshot: missing grid");
    double x0, y0, w, h;
    int nx, ny;
    if (!(is >> x0 >> y0 >> w >> h >> nx >> ny))
        throw std::runtime_error("field snapshot: bad grid line");
    f.grid = Grid2D(x0, y0, w, h, nx, ny);

    if (!(is >> key) || key != "shape")
        throw std::runtime_error("field snapshot: missing shape");
    std::string shape;
    is >> shape;
    if (shape == "rect") {
        f.mask_kind = MaskKind::FULL_RECT;
    } else if (shape == "disk") {
        f.mask_kind = MaskKind::DISK;
        if (!(is >> f.disk.cx >> f.disk.cy >> f.disk.R))
            throw std::runtime_error("field snapshot: bad disk line");
    } else if (shape == "levelset") {
        f.mask_kind = MaskKind::LEVEL_SET;
        int based = 0;
        if (!(is >> f.level >> based >> f.base_disk.cx >> f.base_disk.cy >>
              f.base_disk.R))
            throw std::runtime_error("field snapshot: bad levelset line");
        f.base_is_disk = (based != 0);
    } else {
        throw std::runtime_error("field snapshot: unknown shape " + shape);
    }

    if (!(is >> key) || key != "values")
        throw std::runtime_error("field snapshot: missing values");
    f.values = read_values(is, f.grid);

    if (!(is >> key) || key != "mask")
        throw std::runtime_error("field snapshot: missing mask");
    f.mask.resize(f.grid.node_count());
    for (int j = 0; j <= f.grid.ny; ++j) {
        std::string row;
        if (!(is >> row) || row.size() != static_cast<std::size_t>(f.grid.nx + 1))
            throw std::runtime_error("field snapshot: bad mask row");
        for (int i = 0; i <= f.grid.nx; ++i)
            f.mask[f.grid.node_id(i, j)] = (row[i] == '1');
    }

    if (f.mask_kind == MaskKind::LEVEL_SET) {
        if (!(is >> key) || key != "gap")
            throw std::runtime_error("field snapshot: missing gap table");
        f.level_gap = read_values(is, f.grid);
    }

    if (!(is >> key) || key != "end")
        throw std::runtime_error("field snapshot: missing end marker");
    validate_field(f);
    return f;
}

PlanarField load_field_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return load_field(is);
}

} // namespace scov
