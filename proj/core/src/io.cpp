// Copyright 2026 The Moyal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "moyal/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "moyal/diagnostics.hpp"

namespace moyal::io {

namespace {

using nlohmann::json;

void header(std::ostringstream& os, const std::string& hash, const char* columns) {
  os << std::setprecision(17);
  if (!hash.empty()) os << "# config_hash=" << hash << '\n';
  os << columns << '\n';
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json window_json(const FitWindow& w) { return json::array({w.t_lo, w.t_hi}); }

json estimate_to_json(const LyapunovEstimate& e) {
  return {
      {"value", finite_or_null(e.value)},
      {"fit_window", window_json(e.fit_window)},
      {"residual", finite_or_null(e.residual)},
      {"growth_class", to_string(e.growth_class)},
      {"route", to_string(e.route)},
      {"windowed_slope", finite_or_null(e.windowed_slope)},
      {"slope_stderr", finite_or_null(e.slope_stderr)},
      {"power_exponent", finite_or_null(e.power_exponent)},
      {"power_residual", finite_or_null(e.power_residual)},
      {"n_samples", e.n_samples},
  };
}

template <class T>
void put(std::string& out, const T& v) {
  out.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T take(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw ValidationError("binary grid: truncated file");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

std::string config_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code dir_ec;
    fs::create_directories(target.parent_path(), dir_ec);
    if (dir_ec) throw Error("cannot create " + target.parent_path().string() + ": " + dir_ec.message());
  }
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw Error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename into " + path + ": " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string state_csv(const WaveFunction& psi, const std::string& hash) {
  std::ostringstream os;
  header(os, hash, "q,re,im");
  const Lattice& l = psi.lattice();
  for (std::size_t j = 0; j < l.size(); ++j) {
    os << l.q(j) << ',' << psi[j].real() << ',' << psi[j].imag() << '\n';
  }
  return os.str();
}

std::string phase_space_csv(const PhaseSpaceFunction& a, const std::string& hash) {
  std::ostringstream os;
  header(os, hash, "q,p,value");
  for (std::size_t i = 0; i < a.n_q(); ++i) {
    for (std::size_t j = 0; j < a.n_p(); ++j) {
      os << a.q(i) << ',' << a.p(j) << ',' << a(i, j).real() << '\n';
    }
  }
  return os.str();
}

std::string trajectory_csv(const Trajectory& tr, const std::string& hash) {
  tr.validate();
  std::ostringstream os;
  header(os, hash, "t,Q,P,provenance,hbar,epsilon");
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    os << tr.times[i] << ',' << tr.points[i].q << ',' << tr.points[i].p << ','
       << to_string(tr.provenance) << ',' << tr.hbar << ',' << tr.epsilon << '\n';
  }
  return os.str();
}

std::string tomogram_csv(const Tomogram& tom, const std::string& hash) {
  std::ostringstream os;
  header(os, hash, "theta,Q,value");
  for (std::size_t a = 0; a < tom.n_angles(); ++a) {
    for (std::size_t m = 0; m < tom.n_q(); ++m) {
      os << tom.thetas[a] << ',' << tom.q(m) << ','
         << tom.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(m)) << '\n';
    }
  }
  return os.str();
}

std::string norm_series_csv(const std::vector<double>& times, const std::vector<double>& norms,
                            const std::string& hash) {
  if (times.size() != norms.size()) throw ValidationError("norm series: length mismatch");
  std::ostringstream os;
  header(os, hash, "t,norm");
  for (std::size_t i = 0; i < times.size(); ++i) os << times[i] << ',' << norms[i] << '\n';
  return os.str();
}

Tomogram parse_tomogram_csv(const std::string& text, const Lattice& lattice) {
  std::istringstream is(text);
  std::string line;
  std::map<double, std::map<double, double>> rows;
  std::size_t lineno = 0;
  bool seen_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      if (line.rfind("theta", 0) == 0) continue;
    }
    double th, q, v;
    char c1, c2;
    std::istringstream ls(line);
    if (!(ls >> th >> c1 >> q >> c2 >> v) || c1 != ',' || c2 != ',') {
      throw ValidationError("tomogram csv line " + std::to_string(lineno) +
                            ": expected theta,Q,value");
    }
    rows[th][q] = v;
  }
  if (rows.empty()) throw ValidationError("tomogram csv: no data rows");
  const auto& first = rows.begin()->second;
  if (first.size() < 2) throw ValidationError("tomogram csv: need at least 2 Q values per angle");
  std::vector<double> qs;
  for (const auto& [q, v] : first) qs.push_back(q);
  const double step = (qs.back() - qs.front()) / static_cast<double>(qs.size() - 1);
  for (std::size_t m = 0; m < qs.size(); ++m) {
    if (std::abs(qs[m] - (qs.front() + static_cast<double>(m) * step)) > 1e-9 * std::abs(step)) {
      throw ValidationError("tomogram csv: Q values are not a uniform grid");
    }
  }
  Tomogram tom{lattice, {}, qs.front(), step,
               Eigen::MatrixXd(static_cast<Eigen::Index>(rows.size()),
                               static_cast<Eigen::Index>(qs.size()))};
  Eigen::Index a = 0;
  for (const auto& [th, slice] : rows) {
    if (slice.size() != qs.size()) {
      throw ValidationError("tomogram csv: angles use different Q grids");
    }
    tom.thetas.push_back(th);
    Eigen::Index m = 0;
    for (const auto& [q, v] : slice) {
      if (std::abs(q - qs[static_cast<std::size_t>(m)]) > 1e-9 * std::abs(step)) {
        throw ValidationError("tomogram csv: angles use different Q grids");
      }
      tom.values(a, m++) = v;
    }
    ++a;
  }
  tom.validate();
  return tom;
}

std::string phase_space_binary(const PhaseSpaceFunction& a) {
  std::string out("PSF1");
  put<std::uint64_t>(out, a.n_q());
  put<std::uint64_t>(out, a.n_p());
  put(out, a.q(0));
  put(out, a.dq());
  put(out, a.p(0));
  put(out, a.dp());
  put(out, a.lattice().hbar());
  for (std::size_t i = 0; i < a.n_q(); ++i) {
    for (std::size_t j = 0; j < a.n_p(); ++j) put(out, a(i, j).real());
  }
  return out;
}

GridFile parse_phase_space_binary(const std::string& bytes) {
  if (bytes.size() < 4 || bytes.compare(0, 4, "PSF1") != 0) {
    throw ValidationError("binary grid: bad magic");
  }
  std::size_t pos = 4;
  GridFile g;
  g.n_q = take<std::uint64_t>(bytes, pos);
  g.n_p = take<std::uint64_t>(bytes, pos);
  g.q0 = take<double>(bytes, pos);
  g.dq = take<double>(bytes, pos);
  g.p0 = take<double>(bytes, pos);
  g.dp = take<double>(bytes, pos);
  g.hbar = take<double>(bytes, pos);
  if (bytes.size() - pos != g.n_q * g.n_p * sizeof(double)) {
    throw ValidationError("binary grid: payload size does not match n_q * n_p");
  }
  g.values.resize(g.n_q * g.n_p);
  std::memcpy(g.values.data(), bytes.data() + pos, g.values.size() * sizeof(double));
  return g;
}

std::string estimate_json(const LyapunovEstimate& e) { return estimate_to_json(e).dump(2); }

std::string report_json(const ComparisonReport& r, const std::string& hash) {
  json rows = json::array();
  for (const CompareRow& row : r.rows) {
    json j = {{"hbar", row.hbar},
              {"max_usable_time", row.max_usable_time},
              {"errors", row.errors}};
    j["quantum_fd"] = row.quantum_fd ? estimate_to_json(*row.quantum_fd) : json(nullptr);
    j["quantum_rho0v"] =
        row.quantum_rho0v ? estimate_to_json(*row.quantum_rho0v) : json(nullptr);
    j["egorov_residual"] =
        row.egorov_residual ? finite_or_null(*row.egorov_residual) : json(nullptr);
    rows.push_back(std::move(j));
  }
  json out = {{"potential", r.potential},
              {"x0", {r.x0.q, r.x0.p}},
              {"v", {r.v.q, r.v.p}},
              {"t_max", r.t_max},
              {"classical", estimate_to_json(r.classical)},
              {"rows", rows}};
  if (!hash.empty()) out["config_hash"] = hash;
  return out.dump(2);
}

}  // namespace moyal::io
