#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sppsim/field.hpp"

namespace sppsim {

// File-level failures (open/short read/bad magic). The CLI maps these to a
// distinct exit code from validation errors.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// How field values map onto the 16-bit sample range.
enum class PgmScaling {
    auto_minmax,    // [min, max] -> [0, 65535]; uniform fields map to 0
    unit_interval,  // [0, 1] -> [0, 65535], values outside clamp
};

// Binary (P5) PGM, maxval 65535, big-endian samples. Rows are written from
// the highest z down, so the top of the image is the top of the aperture.
// Quantization: round half up after scaling, clamped to the sample range.
void write_pgm16(const std::filesystem::path& path, const ScalarField2D& field,
                 PgmScaling scaling);

struct Pgm16 {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> samples;  // row-major as stored in the file
};

Pgm16 read_pgm16(const std::filesystem::path& path);

// Field samples as CSV: one comment header line with grid metadata, then one
// row per z-line in ascending z, columns in ascending x. Doubles are printed
// shortest-round-trip.
void write_field_csv(const std::filesystem::path& path, const ScalarField2D& field);

// Generic numeric table: '#'-prefixed header with column names, then rows.
void write_table_csv(const std::filesystem::path& path,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows);

// Parses numeric CSV written by the functions above (comment lines skipped).
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path);

}  // namespace sppsim
