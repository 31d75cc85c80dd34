#pragma once

#include <iosfwd>
#include <string>

#include "spdc/mathkit/grid.hpp"

namespace spdc::io {

// Text grid format (README has the byte-level description):
//
//   # spdc-grid 1
//   kind real|complex
//   axis1 <name> <unit> <min> <max> <count>
//   axis2 <name> <unit> <min> <max> <count>
//   order row-major
//   values
//   <one value per line: "%.16e", or "%.16e %.16e" for complex>
//
// Names and units must not contain whitespace; an empty unit is written as "-".

void write_grid_text(std::ostream& out, const mathkit::RealGrid2D& grid);
void write_grid_text(std::ostream& out, const mathkit::ComplexGrid2D& grid);
mathkit::RealGrid2D read_real_grid_text(std::istream& in, const std::string& source = "<grid>");
mathkit::ComplexGrid2D read_complex_grid_text(std::istream& in, const std::string& source = "<grid>");

/// 1-D series: same header with `kind series` and only axis1.
void write_series_text(std::ostream& out, const mathkit::Series1D& series);
mathkit::Series1D read_series_text(std::istream& in, const std::string& source = "<series>");

// Binary grid format: 64-byte little-endian header
//   char[8] "SPDCGRID" | u32 version = 1 | u32 flags (bit 0: complex) | u64 n1 | u64 n2 |
//   f64 axis1 min | f64 axis1 max | f64 axis2 min | f64 axis2 max
// followed by n1*n2 f64 values (complex: re, im interleaved), row-major. Axis names and units are not
// stored; they are reloaded as "axis1"/"axis2" with empty units.

void write_grid_binary(std::ostream& out, const mathkit::RealGrid2D& grid);
void write_grid_binary(std::ostream& out, const mathkit::ComplexGrid2D& grid);
mathkit::RealGrid2D read_real_grid_binary(std::istream& in, const std::string& source = "<grid>");
mathkit::ComplexGrid2D read_complex_grid_binary(std::istream& in, const std::string& source = "<grid>");

/// Binary 8-bit PGM (P5). Linear map of value / max to 0..255; the first image row is the largest
/// axis1 sample, columns follow axis2. Negative values clip to 0.
void write_heatmap_pgm(std::ostream& out, const mathkit::RealGrid2D& grid);

}  // namespace spdc::io
