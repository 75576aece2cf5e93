#include "sppsim/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "sppsim/kernels.hpp"

namespace sppsim {

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw IoError("failed to format a double");
    return std::string(buf, p);
}

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw IoError("cannot open for writing: " + path.string());
    return f;
}

}  // namespace

void write_pgm16(const std::filesystem::path& path, const ScalarField2D& field,
                 PgmScaling scaling) {
    const std::size_t n = field.size();
    double lo = 0.0, scale = 65535.0;
    if (scaling == PgmScaling::auto_minmax) {
        kernels::MinMax mm = kernels::min_max(field.data(), n);
        lo = mm.min;
        scale = mm.max > mm.min ? 65535.0 / (mm.max - mm.min) : 0.0;
    }
    std::vector<std::uint16_t> q(n);
    kernels::quantize_u16(field.data(), q.data(), n, lo, scale);

    std::ofstream f = open_out(path, true);
    f << "P5\n" << field.nx() << " " << field.nz() << "\n65535\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(field.nx()) * 2);
    for (int iz = field.nz() - 1; iz >= 0; --iz) {
        const std::uint16_t* src = q.data() + static_cast<std::size_t>(iz) * field.nx();
        for (int ix = 0; ix < field.nx(); ++ix) {
            row[2 * ix] = static_cast<unsigned char>(src[ix] >> 8);
            row[2 * ix + 1] = static_cast<unsigned char>(src[ix] & 0xff);
        }
        f.write(reinterpret_cast<const char*>(row.data()),
                static_cast<std::streamsize>(row.size()));
    }
    if (!f) throw IoError("short write: " + path.string());
}

Pgm16 read_pgm16(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path.string());
    std::string magic;
    f >> magic;
    if (magic != "P5") throw IoError("not a binary PGM: " + path.string());
    long w = 0, h = 0, maxval = 0;
    f >> w >> h >> maxval;
    if (!f || w < 1 || h < 1 || maxval != 65535)
        throw IoError("unsupported PGM header: " + path.string());
    f.get();  // single whitespace after maxval
    Pgm16 out;
    out.width = static_cast<int>(w);
    out.height = static_cast<int>(h);
    out.samples.resize(static_cast<std::size_t>(w) * h);
    std::vector<unsigned char> raw(out.samples.size() * 2);
    f.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (f.gcount() != static_cast<std::streamsize>(raw.size()))
        throw IoError("short read: " + path.string());
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
    return out;
}

void write_field_csv(const std::filesystem::path& path, const ScalarField2D& field) {
    std::ofstream f = open_out(path, false);
    const GridSpec& g = field.grid();
    f << "# unit=" << unit_name(field.unit()) << " nx=" << g.nx << " nz=" << g.nz
      << " extent_x_m=" << format_double(g.extent_x)
      << " extent_z_m=" << format_double(g.extent_z)
      << " rows=ascending_z cols=ascending_x\n";
    for (int iz = 0; iz < g.nz; ++iz) {
        for (int ix = 0; ix < g.nx; ++ix) {
            if (ix) f << ',';
            f << format_double(field.at(ix, iz));
        }
        f << '\n';
    }
    if (!f) throw IoError("short write: " + path.string());
}

void write_table_csv(const std::filesystem::path& path,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows) {
    std::ofstream f = open_out(path, false);
    f << "#";
    for (std::size_t i = 0; i < columns.size(); ++i)
        f << (i ? "," : " ") << columns[i];
    f << '\n';
    for (const auto& r : rows) {
        if (r.size() != columns.size())
            throw std::invalid_argument("write_table_csv: row width mismatch");
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) f << ',';
            f << format_double(r[i]);
        }
        f << '\n';
    }
    if (!f) throw IoError("short write: " + path.string());
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open for reading: " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p < end) {
            double v = 0.0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc())
                throw IoError("bad number in CSV: " + path.string());
            row.push_back(v);
            p = next;
            if (p < end && *p == ',') ++p;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sppsim
