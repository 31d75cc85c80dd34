#include "spdc/io/grid_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "spdc/errors.hpp"
#include "spdc/io/keyvalue.hpp"

namespace spdc::io {

namespace {

using mathkit::UniformAxis;

static_assert(std::endian::native == std::endian::little, "binary grid I/O assumes a little-endian host");

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string word(const std::string& s) { return s.empty() ? "-" : s; }
std::string unword(const std::string& s) { return s == "-" ? "" : s; }

void write_axis(std::ostream& out, const char* tag, const UniformAxis& ax) {
  out << tag << ' ' << word(ax.name) << ' ' << word(ax.unit) << ' ' << sci(ax.min) << ' ' << sci(ax.max) << ' '
      << ax.count << '\n';
}

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError(source_, line_ + 1, "unexpected end of file");
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }
  void expect(const std::string& want) {
    const std::string got = next();
    if (got != want) fail("expected '" + want + "', got '" + got + "'");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_, what); }
  double number(const std::string& token) const {
    return parse_double(KeyValueEntry{"", "value", token, line_}, source_);
  }

 private:
  std::istream& in_;
  std::string source_;
  int line_ = 0;
};

UniformAxis read_axis(LineReader& r, const std::string& tag) {
  std::istringstream ss(r.next());
  std::string t, name, unit, lo, hi, extra;
  std::size_t count = 0;
  ss >> t >> name >> unit >> lo >> hi >> count;
  if (!ss || t != tag || (ss >> extra)) r.fail("malformed " + tag + " line");
  UniformAxis ax{unword(name), unword(unit), r.number(lo), r.number(hi), count};
  try {
    mathkit::validate(ax);
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  return ax;
}

std::string read_header(LineReader& r, bool series) {
  r.expect("# spdc-grid 1");
  const std::string kind = r.next();
  if (kind.rfind("kind ", 0) != 0) r.fail("expected 'kind ...'");
  const std::string k = kind.substr(5);
  if (series != (k == "series")) r.fail("unexpected grid kind '" + k + "'");
  return k;
}

template <class T>
void write_text(std::ostream& out, const mathkit::Grid2D<T>& grid, bool complex) {
  out << "# spdc-grid 1\n" << "kind " << (complex ? "complex" : "real") << '\n';
  write_axis(out, "axis1", grid.axis1());
  write_axis(out, "axis2", grid.axis2());
  out << "order row-major\nvalues\n";
  for (const auto& v : grid.values()) {
    if constexpr (std::is_same_v<T, double>)
      out << sci(v) << '\n';
    else
      out << sci(v.real()) << ' ' << sci(v.imag()) << '\n';
  }
}

template <class T>
mathkit::Grid2D<T> read_text(std::istream& in, const std::string& source, bool complex) {
  LineReader r(in, source);
  if (read_header(r, false) != (complex ? "complex" : "real"))
    r.fail(std::string("expected a ") + (complex ? "complex" : "real") + " grid");
  UniformAxis a1 = read_axis(r, "axis1");
  UniformAxis a2 = read_axis(r, "axis2");
  r.expect("order row-major");
  r.expect("values");
  std::vector<T> values(a1.count * a2.count);
  for (auto& v : values) {
    std::istringstream ss(r.next());
    std::string re, im, extra;
    ss >> re;
    if constexpr (std::is_same_v<T, double>) {
      if (!ss || (ss >> extra)) r.fail("expected one value per line");
      v = r.number(re);
    } else {
      ss >> im;
      if (!ss || (ss >> extra)) r.fail("expected 're im' per line");
      v = T(r.number(re), r.number(im));
    }
  }
  return mathkit::Grid2D<T>(std::move(a1), std::move(a2), std::move(values));
}

struct BinaryHeader {
  char magic[8];
  std::uint32_t version;
  std::uint32_t flags;
  std::uint64_t n1;
  std::uint64_t n2;
  double bounds[4];
};
static_assert(sizeof(BinaryHeader) == 64);

template <class T>
void write_binary(std::ostream& out, const mathkit::Grid2D<T>& grid, bool complex) {
  BinaryHeader h{};
  std::memcpy(h.magic, "SPDCGRID", 8);
  h.version = 1;
  h.flags = complex ? 1u : 0u;
  h.n1 = grid.rows();
  h.n2 = grid.cols();
  h.bounds[0] = grid.axis1().min;
  h.bounds[1] = grid.axis1().max;
  h.bounds[2] = grid.axis2().min;
  h.bounds[3] = grid.axis2().max;
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  out.write(reinterpret_cast<const char*>(grid.values().data()),
            static_cast<std::streamsize>(grid.values().size() * sizeof(T)));
}

template <class T>
mathkit::Grid2D<T> read_binary(std::istream& in, const std::string& source, bool complex) {
  BinaryHeader h{};
  if (!in.read(reinterpret_cast<char*>(&h), sizeof h)) throw ParseError(source, 0, "truncated binary header");
  if (std::memcmp(h.magic, "SPDCGRID", 8) != 0) throw ParseError(source, 0, "not an SPDCGRID file");
  if (h.version != 1) throw ParseError(source, 0, "unsupported binary grid version");
  if ((h.flags & 1u) != (complex ? 1u : 0u)) throw ParseError(source, 0, "grid kind mismatch");
  UniformAxis a1{"axis1", "", h.bounds[0], h.bounds[1], static_cast<std::size_t>(h.n1)};
  UniformAxis a2{"axis2", "", h.bounds[2], h.bounds[3], static_cast<std::size_t>(h.n2)};
  try {
    mathkit::validate(a1);
    mathkit::validate(a2);
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, e.what());
  }
  std::vector<T> values(a1.count * a2.count);
  if (!in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(T))))
    throw ParseError(source, 0, "truncated binary grid payload");
  return mathkit::Grid2D<T>(std::move(a1), std::move(a2), std::move(values));
}

}  // namespace

void write_grid_text(std::ostream& out, const mathkit::RealGrid2D& grid) { write_text(out, grid, false); }
void write_grid_text(std::ostream& out, const mathkit::ComplexGrid2D& grid) { write_text(out, grid, true); }

mathkit::RealGrid2D read_real_grid_text(std::istream& in, const std::string& source) {
  return read_text<double>(in, source, false);
}
mathkit::ComplexGrid2D read_complex_grid_text(std::istream& in, const std::string& source) {
  return read_text<std::complex<double>>(in, source, true);
}

void write_series_text(std::ostream& out, const mathkit::Series1D& series) {
  out << "# spdc-grid 1\nkind series\n";
  write_axis(out, "axis1", series.axis);
  out << "order row-major\nvalues\n";
  for (double v : series.values) out << sci(v) << '\n';
}

mathkit::Series1D read_series_text(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  read_header(r, true);
  mathkit::Series1D s{read_axis(r, "axis1"), {}};
  r.expect("order row-major");
  r.expect("values");
  s.values.resize(s.axis.count);
  for (auto& v : s.values) v = r.number(trim(r.next()));
  return s;
}

void write_grid_binary(std::ostream& out, const mathkit::RealGrid2D& grid) { write_binary(out, grid, false); }
void write_grid_binary(std::ostream& out, const mathkit::ComplexGrid2D& grid) { write_binary(out, grid, true); }

mathkit::RealGrid2D read_real_grid_binary(std::istream& in, const std::string& source) {
  return read_binary<double>(in, source, false);
}
mathkit::ComplexGrid2D read_complex_grid_binary(std::istream& in, const std::string& source) {
  return read_binary<std::complex<double>>(in, source, true);
}

void write_heatmap_pgm(std::ostream& out, const mathkit::RealGrid2D& grid) {
  double peak = 0.0;
  for (double v : grid.values()) peak = std::max(peak, v);
  const std::size_t rows = grid.rows(), cols = grid.cols();
  out << "P5\n" << cols << ' ' << rows << "\n255\n";
  std::vector<unsigned char> line(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t i = rows - 1 - r;
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = peak > 0.0 ? std::clamp(grid(i, j) / peak, 0.0, 1.0) : 0.0;
      line[j] = static_cast<unsigned char>(std::lround(255.0 * x));
    }
    out.write(reinterpret_cast<const char*>(line.data()), static_cast<std::streamsize>(cols));
  }
}

}  // namespace spdc::io
