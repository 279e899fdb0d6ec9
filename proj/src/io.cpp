#include "qdcav/io.hpp"

#include "qdcav/errors.hpp"
#include "qdcav/scenario.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace qdcav {

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::vector<std::vector<double>> parse_table(std::string_view text, std::string_view header,
                                             std::size_t columns) {
    std::vector<std::vector<double>> cols(columns);
    std::size_t pos = 0;
    bool first = true;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (first) {
            if (line != header) throw ConfigError("unexpected CSV header '" + std::string(line) + "'");
            first = false;
            continue;
        }
        std::size_t start = 0;
        for (std::size_t c = 0; c < columns; ++c) {
            const auto comma = line.find(',', start);
            const bool last = c + 1 == columns;
            if (last != (comma == std::string_view::npos)) {
                throw ConfigError("CSV line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(columns) + " columns");
            }
            const auto cell = line.substr(start, last ? std::string_view::npos : comma - start);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
                throw ConfigError("CSV line " + std::to_string(line_no) + ": bad number '" + std::string(cell) + "'");
            }
            cols[c].push_back(v);
            start = comma + 1;
        }
    }
    if (first) throw ConfigError("CSV is missing its header");
    return cols;
}

}  // namespace

std::string spectrum_csv(const SpectrumTable& t) {
    std::string out(kSpectrumHeader);
    out += '\n';
    for (std::size_t k = 0; k < t.energy.size(); ++k) {
        out += format_double(t.energy[k]) + ',' + format_double(t.i_a[k]) + ',' + format_double(t.i_b[k]) + ',' +
               format_double(t.detected[k]) + '\n';
    }
    return out;
}

SpectrumTable parse_spectrum_csv(std::string_view text) {
    auto cols = parse_table(text, kSpectrumHeader, 4);
    return {std::move(cols[0]), std::move(cols[1]), std::move(cols[2]), std::move(cols[3])};
}

std::string sweep_csv(const SweepResult& sweep) {
    std::string out(kSweepHeader);
    out += '\n';
    for (const auto& r : sweep.rows) {
        out += format_double(r.p) + ',' + format_double(r.q_measured) + ',' + format_double(r.e_peak) + ',' +
               format_double(r.fwhm) + ',' + format_double(r.dip_contrast) + '\n';
    }
    return out;
}

SweepResult parse_sweep_csv(std::string_view text) {
    const auto cols = parse_table(text, kSweepHeader, 5);
    SweepResult s;
    for (std::size_t i = 0; i < cols[0].size(); ++i) {
        SweepRow r;
        r.p = cols[0][i];
        r.q_measured = cols[1][i];
        r.e_peak = cols[2][i];
        r.fwhm = cols[3][i];
        r.dip_contrast = cols[4][i];
        s.rows.push_back(r);
    }
    return s;
}

}  // namespace qdcav
