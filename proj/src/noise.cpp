#include "spdelab/noise.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "spdelab/rng.hpp"

namespace spdelab {

WhiteNoiseSample sample_white_noise(const SpaceTimeGrid& grid, std::uint64_t seed,
                                    std::uint64_t path_index) {
    grid.validate();
    WhiteNoiseSample W;
    W.grid = grid;
    W.seed = seed;
    W.path_index = path_index;
    const std::size_t cells = static_cast<std::size_t>(grid.nt) * grid.nx;
    W.increments.resize(cells);
    const double scale = std::sqrt(grid.dt() * grid.dx());
    for (std::size_t c = 0; c < cells; ++c)
        W.increments[c] = scale * rng::normal(seed, path_index, c);
    return W;
}

DriftField make_drift(const SpaceTimeGrid& grid,
                      const std::function<double(double, double)>& h) {
    grid.validate();
    DriftField out;
    out.grid = grid;
    out.kind = DriftField::Kind::deterministic;
    out.values.resize(static_cast<std::size_t>(grid.nt) * grid.nx);
    for (int n = 0; n < grid.nt; ++n) {
        const double t = grid.time(n);
        for (int i = 0; i < grid.nx; ++i) out.at(n, i) = h(t, grid.node(i));
    }
    return out;
}

WhiteNoiseSample girsanov_shift(const WhiteNoiseSample& W, const DriftField& h) {
    require_same_grid(W.grid, h.grid, "girsanov_shift");
    WhiteNoiseSample out = W;
    const double cell = W.grid.dt() * W.grid.dx();
    const std::size_t n = W.increments.size();
    for (std::size_t c = 0; c < n; ++c) out.increments[c] = W.increments[c] - h.values[c] * cell;
    return out;
}

double girsanov_log_density(const WhiteNoiseSample& W, const DriftField& h) {
    require_same_grid(W.grid, h.grid, "girsanov_log_density");
    const double cell = W.grid.dt() * W.grid.dx();
    double ito = 0.0, quad = 0.0;
    for (int n = 0; n < W.grid.nt; ++n) {
        const double* hv = h.row(n);
        const double* wv = W.row(n);
        for (int i = 0; i < W.grid.nx; ++i) {
            ito += hv[i] * wv[i];
            quad += hv[i] * hv[i];
        }
    }
    return ito - 0.5 * quad * cell;
}

double relative_entropy(const DriftField& h) {
    const double cell = h.grid.dt() * h.grid.dx();
    double quad = 0.0;
    for (int n = 0; n < h.grid.nt; ++n) {
        const double* hv = h.row(n);
        for (int i = 0; i < h.grid.nx; ++i) quad += hv[i] * hv[i];
    }
    return 0.5 * quad * cell;
}

double relative_entropy(std::span<const DriftField> realizations) {
    if (realizations.empty())
        throw std::invalid_argument("relative_entropy: empty ensemble");
    double acc = 0.0;
    for (const DriftField& h : realizations) acc += relative_entropy(h);
    return acc / static_cast<double>(realizations.size());
}

namespace {

constexpr char kMagic[8] = {'S', 'P', 'D', 'E', 'M', 'A', 'T', '1'};

struct BinHeader {
    char magic[8];
    double T;
    std::uint64_t rows;
    std::uint64_t nx;
    std::uint64_t nt;
    std::uint64_t seed;
    std::uint64_t path_index;
};

void save_matrix(const std::string& path, const SpaceTimeGrid& grid, std::uint64_t rows,
                 std::uint64_t seed, std::uint64_t path_index, const std::vector<double>& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    BinHeader h{};
    std::memcpy(h.magic, kMagic, sizeof(kMagic));
    h.T = grid.T;
    h.rows = rows;
    h.nx = static_cast<std::uint64_t>(grid.nx);
    h.nt = static_cast<std::uint64_t>(grid.nt);
    h.seed = seed;
    h.path_index = path_index;
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failed: " + path);
}

BinHeader load_matrix(const std::string& path, std::vector<double>& data) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for read: " + path);
    BinHeader h{};
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    if (!in || std::memcmp(h.magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("bad header: " + path);
    data.resize(h.rows * h.nx);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated file: " + path);
    return h;
}

}  // namespace

void save_noise(const WhiteNoiseSample& W, const std::string& path) {
    save_matrix(path, W.grid, static_cast<std::uint64_t>(W.grid.nt), W.seed, W.path_index,
                W.increments);
}

WhiteNoiseSample load_noise(const std::string& path) {
    WhiteNoiseSample W;
    BinHeader h = load_matrix(path, W.increments);
    W.grid = SpaceTimeGrid{h.T, static_cast<int>(h.nt), static_cast<int>(h.nx)};
    if (h.rows != h.nt) throw std::runtime_error("noise file has wrong row count: " + path);
    W.seed = h.seed;
    W.path_index = h.path_index;
    return W;
}

void save_field_binary(const RandomField& field, const std::string& path) {
    save_matrix(path, field.grid, static_cast<std::uint64_t>(field.grid.nt + 1), 0, 0,
                field.values);
}

RandomField load_field_binary(const std::string& path) {
    RandomField f;
    BinHeader h = load_matrix(path, f.values);
    f.grid = SpaceTimeGrid{h.T, static_cast<int>(h.nt), static_cast<int>(h.nx)};
    if (h.rows != h.nt + 1) throw std::runtime_error("field file has wrong row count: " + path);
    return f;
}

void save_field_csv(const RandomField& field, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << "t,x,value\n";
    char buf[96];
    for (int n = 0; n <= field.grid.nt; ++n) {
        for (int i = 0; i < field.grid.nx; ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", field.grid.time(n),
                          field.grid.node(i), field.at(n, i));
            out << buf;
        }
    }
}

WhiteNoiseSample coarsen_noise(const WhiteNoiseSample& fine, int rt, int rx) {
    if (rt < 1 || rx < 1) throw std::invalid_argument("coarsen_noise: ratios must be >= 1");
    if (fine.grid.nt % rt != 0 || (fine.grid.nx + 1) % rx != 0)
        throw std::invalid_argument("coarsen_noise: grid does not refine the target");
    WhiteNoiseSample W;
    W.grid = SpaceTimeGrid{fine.grid.T, fine.grid.nt / rt, (fine.grid.nx + 1) / rx - 1};
    W.grid.validate();
    W.seed = fine.seed;
    W.path_index = fine.path_index;
    W.increments.assign(static_cast<std::size_t>(W.grid.nt) * W.grid.nx, 0.0);
    // coarse cell i (1-based) is the union of fine cells rx*(i-1)+1 .. rx*i
    for (int n = 0; n < W.grid.nt; ++n) {
        for (int i = 0; i < W.grid.nx; ++i) {
            double s = 0.0;
            for (int a = 0; a < rt; ++a)
                for (int b = 0; b < rx; ++b) s += fine.at(n * rt + a, rx * i + b);
            W.at(n, i) = s;
        }
    }
    return W;
}

}  // namespace spdelab
