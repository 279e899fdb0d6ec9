#include "qdcav/spectrum.hpp"

#include "qdcav/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace qdcav {

std::vector<double> EnergyGrid::centers() const {
    std::vector<double> c(static_cast<std::size_t>(n_bins));
    for (std::int64_t k = 0; k < n_bins; ++k) c[static_cast<std::size_t>(k)] = center(k);
    return c;
}

std::int64_t EnergyGrid::bin_of(double e) const {
    const double k = std::floor((e - e_min) / bin_width);
    if (!(k >= 0.0 && k < static_cast<double>(n_bins))) return -1;
    return static_cast<std::int64_t>(k);
}

int energy_nodes_for_bin_width(double window_width, double max_bin_width) {
    if (!(window_width > 0.0 && max_bin_width > 0.0)) {
        throw DomainError("energy_nodes_for_bin_width: widths must be positive");
    }
    const double n = std::ceil(window_width / max_bin_width - 1e-9);
    if (n > static_cast<double>(std::numeric_limits<int>::max())) {
        throw ConfigError("too many bins across the window", "bin_width_mev");
    }
    return static_cast<int>(n);
}

EnergyGrid grid_for_window(const EnsembleConfig& cfg, std::span<const QuantumDot> dots,
                           double max_bin_width) {
    const int n_window = energy_nodes_for_bin_width(cfg.window_width, max_bin_width);
    const double w = cfg.window_width / n_window;

    double lo = cfg.window_lo();
    double hi = cfg.window_hi();
    for (const auto& d : dots) {
        lo = std::min({lo, d.e_x, d.e_x - d.e_bind});
        hi = std::max({hi, d.e_x, d.e_x - d.e_bind});
    }
    // Two spare bins on each side keep floor() rounding at the boundaries inside the grid.
    const auto below = static_cast<std::int64_t>(std::ceil((cfg.window_lo() - lo) / w)) + 2;
    const auto above = static_cast<std::int64_t>(std::ceil((hi - cfg.window_hi()) / w)) + 2;

    EnergyGrid g;
    g.bin_width = w;
    g.e_min = cfg.window_lo() - static_cast<double>(below) * w;
    g.n_bins = below + n_window + above;
    return g;
}

void CollectionGeometry::validate() const {
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("must lie in [0, 1]", "collection_a");
    if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("must lie in [0, 1]", "collection_b");
    if (a == 0.0 && b == 0.0) throw ConfigError("A and B cannot both be zero", "collection");
}

LineTable prepare_lines(std::span<const QuantumDot> dots, const CavityMode& mode, const EnergyGrid& grid,
                        BiexcitonCoupling coupling) {
    if (!(grid.bin_width > 0.0) || grid.n_bins < 1) throw DomainError("prepare_lines: empty grid");
    if (grid.n_bins > std::numeric_limits<std::int32_t>::max()) {
        throw DomainError("prepare_lines: grid too large");
    }
    if (grid.bin_width > mode.fwhm() / 10.0 * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "prepare_lines: bin width " << grid.bin_width << " meV exceeds a tenth of the mode width ("
           << mode.fwhm() / 10.0 << " meV)";
        throw DomainError(os.str());
    }

    auto locate = [&](double e, const char* what) {
        const auto k = grid.bin_of(e);
        if (k < 0) {
            std::ostringstream os;
            os.precision(17);
            os << what << " line at " << e << " meV outside grid [" << grid.e_min << ", " << grid.e_max()
               << ") meV";
            throw AccumulationError(os.str(), e);
        }
        return static_cast<std::int32_t>(k);
    };

    LineTable t;
    t.grid = grid;
    t.bin_x.reserve(dots.size());
    t.bin_xx.reserve(dots.size());
    t.rates.reserve(dots.size());
    t.weight.reserve(dots.size());
    for (const auto& d : dots) {
        t.bin_x.push_back(locate(d.e_x, "exciton"));
        t.bin_xx.push_back(locate(d.e_x - d.e_bind, "biexciton"));
        t.rates.push_back(transition_rates(d, mode, coupling));
        t.weight.push_back(d.weight);
    }
    return t;
}

namespace {

// Partial histograms are built over fixed-size chunks of dots and merged in chunk order, so the
// result does not depend on how many threads ran.
constexpr std::size_t kChunk = 1 << 16;

void accumulate_chunk(const LineTable& lines, double p, std::size_t begin, std::size_t end,
                      std::vector<double>& a, std::vector<double>& b) {
    for (std::size_t i = begin; i < end; ++i) {
        const auto& r = lines.rates[i];
        const SteadyState s = steady_state(p, r);
        const double w = lines.weight[i];
        const double nx = w * s.i_x;
        const double nxx = w * s.i_xx;
        const double ax = nx * r.beta_x;
        const double axx = nxx * r.beta_xx;
        a[static_cast<std::size_t>(lines.bin_x[i])] += ax;
        b[static_cast<std::size_t>(lines.bin_x[i])] += nx - ax;
        a[static_cast<std::size_t>(lines.bin_xx[i])] += axx;
        b[static_cast<std::size_t>(lines.bin_xx[i])] += nxx - axx;
    }
}

}  // namespace

Spectrum synthesize(const LineTable& lines, double p) {
    if (!(p >= 0.0)) throw DomainError("synthesize: pump rate must be >= 0");
    const auto n_bins = static_cast<std::size_t>(lines.grid.n_bins);
    const std::size_t n_chunks = std::max<std::size_t>(1, (lines.size() + kChunk - 1) / kChunk);

    std::vector<std::vector<double>> part_a(n_chunks, std::vector<double>(n_bins, 0.0));
    std::vector<std::vector<double>> part_b(n_chunks, std::vector<double>(n_bins, 0.0));

    auto run_chunk = [&](std::size_t c) {
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(lines.size(), begin + kChunk);
        accumulate_chunk(lines, p, begin, end, part_a[c], part_b[c]);
    };

    const std::size_t n_threads =
        std::min<std::size_t>(n_chunks, std::max(1u, std::thread::hardware_concurrency()));
    if (n_threads <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t c = next++; c < n_chunks; c = next++) run_chunk(c);
            });
        }
    }

    Spectrum s;
    s.grid = lines.grid;
    s.pump = p;
    s.i_a = std::move(part_a[0]);
    s.i_b = std::move(part_b[0]);
    for (std::size_t c = 1; c < n_chunks; ++c) {
        for (std::size_t k = 0; k < n_bins; ++k) {
            s.i_a[k] += part_a[c][k];
            s.i_b[k] += part_b[c][k];
        }
    }
    return s;
}

Spectrum synthesize(std::span<const QuantumDot> dots, const CavityMode& mode, double p,
                    const EnergyGrid& grid, BiexcitonCoupling coupling) {
    return synthesize(prepare_lines(dots, mode, grid, coupling), p);
}

std::vector<double> combine(const Spectrum& spec, const CollectionGeometry& geom) {
    std::vector<double> out(spec.i_a.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = geom.a * spec.i_a[k] + geom.b * spec.i_b[k];
    return out;
}

std::vector<double> normalize_peak(std::span<const double> channel) {
    if (channel.empty()) throw DomainError("normalize_peak: empty channel");
    const double peak = *std::max_element(channel.begin(), channel.end());
    if (!(peak > 0.0)) throw DomainError("normalize_peak: channel maximum is not positive");
    std::vector<double> out(channel.begin(), channel.end());
    for (auto& v : out) v /= peak;
    return out;
}

std::vector<double> smooth_lorentzian(std::span<const double> channel, const EnergyGrid& grid,
                                      double fwhm) {
    if (!(fwhm > 0.0)) throw DomainError("smooth_lorentzian: width must be positive");
    const double hw = 0.5 * fwhm;
    // Truncate the kernel at 50 half-widths; renormalize so the discrete kernel sums to one.
    const auto reach = static_cast<std::int64_t>(std::ceil(50.0 * hw / grid.bin_width));
    std::vector<double> kernel(static_cast<std::size_t>(2 * reach + 1));
    double norm = 0.0;
    for (std::int64_t j = -reach; j <= reach; ++j) {
        const double d = static_cast<double>(j) * grid.bin_width;
        const double v = hw / (std::numbers::pi * (d * d + hw * hw));
        kernel[static_cast<std::size_t>(j + reach)] = v;
        norm += v;
    }
    for (auto& v : kernel) v /= norm;

    const auto n = static_cast<std::int64_t>(channel.size());
    std::vector<double> out(channel.size(), 0.0);
    for (std::int64_t k = 0; k < n; ++k) {
        const double src = channel[static_cast<std::size_t>(k)];
        if (src == 0.0) continue;
        const auto lo = std::max<std::int64_t>(0, k - reach);
        const auto hi = std::min<std::int64_t>(n - 1, k + reach);
        for (std::int64_t m = lo; m <= hi; ++m) {
            out[static_cast<std::size_t>(m)] += src * kernel[static_cast<std::size_t>(m - k + reach)];
        }
    }
    return out;
}

}  // namespace qdcav
