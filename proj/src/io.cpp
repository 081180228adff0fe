#include "sparsepresence/io.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sparsepresence/errors.hpp"

namespace spres {

namespace {

constexpr std::array<char, 8> kDictMagic = {'S', 'P', 'D', 'I',
                                            'C', 'T', '0', '1'};
constexpr std::array<char, 8> kObsMagic = {'S', 'P', 'O', 'B',
                                           'S', '0', '0', '1'};
constexpr std::array<char, 8> kIcpaMagic = {'S', 'P', 'I', 'C',
                                            'P', 'A', '0', '1'};

[[noreturn]] void io_fail(const std::filesystem::path& path,
                          const std::string& what) {
  throw IoError(path.string() + ": " + what);
}

class Writer {
 public:
  Writer(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) io_fail(path_, "cannot open for writing");
  }
  void magic(const std::array<char, 8>& m) { raw(m.data(), m.size()); }
  void u64(std::uint64_t v) {
    std::array<char, 8> buf;
    for (int i = 0; i < 8; ++i)
      buf[static_cast<std::size_t>(i)] =
          static_cast<char>((v >> (8 * i)) & 0xFF);
    raw(buf.data(), buf.size());
  }
  void f64(const double* data, std::size_t count) {
    if constexpr (std::endian::native == std::endian::little) {
      raw(reinterpret_cast<const char*>(data), count * sizeof(double));
    } else {
      for (std::size_t i = 0; i < count; ++i)
        u64(std::bit_cast<std::uint64_t>(data[i]));
    }
  }
  void close() {
    out_.close();
    if (!out_) io_fail(path_, "write failed");
  }

 private:
  void raw(const char* data, std::size_t count) {
    out_.write(data, static_cast<std::streamsize>(count));
    if (!out_) io_fail(path_, "write failed");
  }
  std::filesystem::path path_;
  std::ofstream out_;
};

class Reader {
 public:
  Reader(const std::filesystem::path& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) io_fail(path_, "cannot open for reading");
  }
  void magic(const std::array<char, 8>& expected) {
    std::array<char, 8> got;
    raw(got.data(), got.size());
    if (got != expected) io_fail(path_, "bad magic");
  }
  std::uint64_t u64() {
    std::array<unsigned char, 8> buf;
    raw(reinterpret_cast<char*>(buf.data()), buf.size());
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
      v = (v << 8) | buf[static_cast<std::size_t>(i)];
    return v;
  }
  void f64(double* data, std::size_t count) {
    if constexpr (std::endian::native == std::endian::little) {
      raw(reinterpret_cast<char*>(data), count * sizeof(double));
    } else {
      for (std::size_t i = 0; i < count; ++i)
        data[i] = std::bit_cast<double>(u64());
    }
  }
  void expect_eof() {
    char c;
    in_.read(&c, 1);
    if (!in_.eof()) io_fail(path_, "trailing bytes");
  }

 private:
  void raw(char* data, std::size_t count) {
    in_.read(data, static_cast<std::streamsize>(count));
    if (in_.gcount() != static_cast<std::streamsize>(count))
      io_fail(path_, "truncated file");
  }
  std::filesystem::path path_;
  std::ifstream in_;
};

Eigen::Index checked_dim(std::uint64_t v, const std::filesystem::path& path,
                         const char* what) {
  // 2^31 columns/rows is far beyond anything this library addresses.
  if (v == 0 || v > (1ull << 31))
    io_fail(path, std::string("implausible ") + what + " " +
                      std::to_string(v));
  return static_cast<Eigen::Index>(v);
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void save_dictionary(const Dictionary& dict,
                     const std::filesystem::path& path) {
  Writer w(path);
  w.magic(kDictMagic);
  w.u64(static_cast<std::uint64_t>(dict.n_dims()));
  w.u64(static_cast<std::uint64_t>(dict.n_atoms()));
  w.f64(dict.atoms().data(), static_cast<std::size_t>(dict.atoms().size()));
  w.close();
}

Dictionary load_dictionary(const std::filesystem::path& path) {
  Reader r(path);
  r.magic(kDictMagic);
  const Eigen::Index n = checked_dim(r.u64(), path, "n_dims");
  const Eigen::Index m = checked_dim(r.u64(), path, "n_atoms");
  if (static_cast<double>(n) * static_cast<double>(m) > 4e9)
    io_fail(path, "dictionary too large");
  Eigen::MatrixXd atoms(n, m);
  r.f64(atoms.data(), static_cast<std::size_t>(atoms.size()));
  r.expect_eof();
  try {
    return Dictionary(std::move(atoms));
  } catch (const ArgumentError& e) {
    io_fail(path, std::string("invalid dictionary payload: ") + e.what());
  }
}

void save_observations(const ObservationSet& obs,
                       const std::filesystem::path& path) {
  Writer w(path);
  w.magic(kObsMagic);
  w.u64(static_cast<std::uint64_t>(obs.n_dims()));
  w.u64(static_cast<std::uint64_t>(obs.n_steps()));
  w.f64(obs.matrix().data(), static_cast<std::size_t>(obs.matrix().size()));
  w.close();
}

ObservationSet load_observations(const std::filesystem::path& path) {
  Reader r(path);
  r.magic(kObsMagic);
  const Eigen::Index n = checked_dim(r.u64(), path, "n_dims");
  const std::uint64_t steps_raw = r.u64();
  if (steps_raw > (1ull << 31)) io_fail(path, "implausible n_steps");
  const Eigen::Index steps = static_cast<Eigen::Index>(steps_raw);
  Eigen::MatrixXd m(n, steps);
  r.f64(m.data(), static_cast<std::size_t>(m.size()));
  r.expect_eof();
  try {
    return ObservationSet(std::move(m));
  } catch (const ArgumentError& e) {
    io_fail(path, std::string("invalid record payload: ") + e.what());
  }
}

void save_observations_csv(const ObservationSet& obs,
                           const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) io_fail(path, "cannot open for writing");
  for (int t = 0; t < obs.n_steps(); ++t) {
    for (int i = 0; i < obs.n_dims(); ++i) {
      if (i) out << ',';
      out << format_double(obs.matrix()(i, t));
    }
    out << '\n';
  }
  out.close();
  if (!out) io_fail(path, "write failed");
}

ObservationSet load_observations_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) io_fail(path, "cannot open for reading");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (line.empty() && in.eof()) break;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        io_fail(path, "unparseable cell '" + cell + "'");
      }
      while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
      if (pos != cell.size()) io_fail(path, "unparseable cell '" + cell + "'");
      row.push_back(v);
    }
    if (row.empty()) io_fail(path, "empty row");
    if (width == 0)
      width = row.size();
    else if (row.size() != width)
      io_fail(path, "ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) io_fail(path, "no observations");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(width),
                    static_cast<Eigen::Index>(rows.size()));
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t i = 0; i < width; ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) =
          rows[t][i];
  try {
    return ObservationSet(std::move(m));
  } catch (const ArgumentError& e) {
    io_fail(path, std::string("invalid record payload: ") + e.what());
  }
}

void save_icpa_checkpoint(const IcpaSolver& solver,
                          const std::filesystem::path& path) {
  Writer w(path);
  w.magic(kIcpaMagic);
  w.u64(static_cast<std::uint64_t>(solver.n_atoms()));
  w.u64(static_cast<std::uint64_t>(solver.steps_processed()));
  w.f64(solver.theta().data(),
        static_cast<std::size_t>(solver.theta().size()));
  w.f64(solver.gain().data(), static_cast<std::size_t>(solver.gain().size()));
  w.close();
}

IcpaSolver load_icpa_checkpoint(const std::filesystem::path& path) {
  Reader r(path);
  r.magic(kIcpaMagic);
  const Eigen::Index m = checked_dim(r.u64(), path, "n_atoms");
  const std::uint64_t steps = r.u64();
  if (steps > (1ull << 62)) io_fail(path, "implausible step count");
  Eigen::VectorXd theta(m);
  r.f64(theta.data(), static_cast<std::size_t>(m));
  Eigen::MatrixXd gain(m, m);
  r.f64(gain.data(), static_cast<std::size_t>(gain.size()));
  r.expect_eof();
  try {
    return IcpaSolver::restore(std::move(theta), std::move(gain),
                               static_cast<std::int64_t>(steps));
  } catch (const ArgumentError& e) {
    io_fail(path, std::string("invalid checkpoint payload: ") + e.what());
  }
}

void save_presence_csv(const PresenceVector& presence,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) io_fail(path, "cannot open for writing");
  out << "atom_index,theta\n";
  for (Eigen::Index i = 0; i < presence.theta.size(); ++i)
    out << i << ',' << format_double(presence.theta(i)) << '\n';
  out.close();
  if (!out) io_fail(path, "write failed");
}

PresenceVector load_presence_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) io_fail(path, "cannot open for reading");
  std::string line;
  if (!std::getline(in, line) || line != "atom_index,theta")
    io_fail(path, "missing presence header");
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty() && in.eof()) break;
    const auto comma = line.find(',');
    if (comma == std::string::npos) io_fail(path, "malformed row");
    std::size_t idx = 0;
    long atom = 0;
    double theta = 0.0;
    try {
      atom = std::stol(line.substr(0, comma), &idx);
      theta = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      io_fail(path, "malformed row '" + line + "'");
    }
    if (atom != static_cast<long>(values.size()))
      io_fail(path, "atom indices must be 0..M-1 in order");
    values.push_back(theta);
  }
  if (values.empty()) io_fail(path, "no presence rows");
  return PresenceVector{Eigen::Map<Eigen::VectorXd>(
      values.data(), static_cast<Eigen::Index>(values.size()))};
}

void save_coefficients_csv(const MmvCoefficients& coeffs,
                           const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) io_fail(path, "cannot open for writing");
  out << "atom_index,t,value\n";
  for (Eigen::Index i = 0; i < coeffs.values.rows(); ++i) {
    if ((coeffs.values.row(i).array() == 0.0).all()) continue;
    for (Eigen::Index t = 0; t < coeffs.values.cols(); ++t)
      out << i << ',' << t << ',' << format_double(coeffs.values(i, t))
          << '\n';
  }
  out.close();
  if (!out) io_fail(path, "write failed");
}

}  // namespace spres
