#pragma once

// Dataset directory format:
//   molecule.json            name, reduced_mass, ground_label, default_gamma,
//                            states[] {label, omega, parity_tag?, asymptote_energy,
//                            rigid_r_e?, potential?}
//   pot__<label>.dat         potential table (default name)
//   dip__<bra>__<ket>.dat    dipole table
// Curve files: '#' comment lines, one `units: <length> <value>` header, then
// two whitespace-separated columns.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "constants.hpp"
#include "dataset.hpp"
#include "errors.hpp"

namespace polarmol {

namespace detail {

struct CurveTable {
  std::vector<double> r, value;
};

enum class CurveQuantity { energy, dipole };

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline CurveTable read_curve(const std::filesystem::path& path, CurveQuantity quantity) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": cannot open");
  const std::string where = path.filename().string();
  auto fail = [&](std::size_t line, const std::string& msg) -> DataError {
    return DataError(where + ":" + std::to_string(line) + ": " + msg);
  };

  double length_scale = 0.0, value_scale = 0.0;
  CurveTable table;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (length_scale == 0.0) {
      std::istringstream hs(line);
      std::string key, lu, vu, extra;
      hs >> key >> lu >> vu;
      if (key != "units:" || lu.empty() || vu.empty() || (hs >> extra))
        throw fail(line_no, "expected header 'units: <length-unit> <value-unit>'");
      if (lu == "bohr") length_scale = 1.0;
      else if (lu == "angstrom") length_scale = constants::angstrom_to_bohr;
      else throw fail(line_no, "unknown length unit '" + lu + "'");
      if (quantity == CurveQuantity::energy) {
        if (vu == "cm-1") value_scale = 1.0;
        else if (vu == "hartree") value_scale = constants::hartree_to_wavenumber;
        else throw fail(line_no, "unknown energy unit '" + vu + "'");
      } else {
        if (vu == "debye") value_scale = 1.0;
        else if (vu == "au") value_scale = constants::au_dipole_to_debye;
        else throw fail(line_no, "unknown dipole unit '" + vu + "'");
      }
      continue;
    }
    std::istringstream ls(line);
    double r = 0.0, v = 0.0;
    std::string extra;
    if (!(ls >> r >> v) || (ls >> extra)) throw fail(line_no, "expected two numeric columns");
    if (!std::isfinite(r) || !std::isfinite(v)) throw fail(line_no, "non-finite value");
    r *= length_scale;
    v *= value_scale;
    if (!(r > 0.0)) throw fail(line_no, "R must be positive");
    if (!table.r.empty() && !(r > table.r.back())) throw fail(line_no, "R values not strictly increasing");
    table.r.push_back(r);
    table.value.push_back(v);
  }
  if (length_scale == 0.0) throw fail(line_no, "missing units header");
  if (table.r.size() < 2) throw fail(line_no, "need at least 2 data rows");
  return table;
}

inline void write_curve(const std::filesystem::path& path, std::string_view comment,
                        std::string_view value_unit, const std::vector<double>& r,
                        const std::vector<double>& v) {
  std::ofstream out(path);
  if (!out) throw DataError(path.string() + ": cannot write");
  out << "# " << comment << "\n";
  out << "units: bohr " << value_unit << "\n";
  char buf[64];
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", r[i], v[i]);
    out << buf;
  }
}

inline std::string default_potential_file(const std::string& label) { return "pot__" + label + ".dat"; }
inline std::string dipole_file(const std::string& bra, const std::string& ket) {
  return "dip__" + bra + "__" + ket + ".dat";
}

}  // namespace detail

inline MoleculeDataset load_dataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  using nlohmann::json;
  const fs::path meta_path = dir / "molecule.json";
  if (!fs::is_directory(dir)) throw DataError(dir.string() + ": not a directory");
  std::ifstream in(meta_path);
  if (!in) throw DataError(meta_path.string() + ": cannot open");

  json meta;
  try {
    meta = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError("molecule.json: " + std::string(e.what()));
  }

  MoleculeDataset ds;
  try {
    if (!meta.contains("reduced_mass") || meta["reduced_mass"].is_null())
      throw DataError("missing reduced mass");
    ds.name = meta.value("name", std::string{});
    ds.reduced_mass = meta.at("reduced_mass").get<double>();
    if (!meta.contains("ground_label")) throw DataError("molecule.json: missing ground_label");
    ds.ground_label = meta.at("ground_label").get<std::string>();
    ds.default_gamma = meta.value("default_gamma", 6.0);
    ds.description = meta.value("description", std::string{});
    if (!meta.contains("states") || !meta["states"].is_array())
      throw DataError("molecule.json: missing states list");

    for (const auto& js : meta["states"]) {
      ElectronicState s;
      s.label = js.at("label").get<std::string>();
      if (s.label.find("__") != std::string::npos || s.label.find('/') != std::string::npos)
        throw DataError("state label '" + s.label + "' may not contain '__' or '/'");
      s.omega = js.at("omega").get<int>();
      if (js.contains("parity_tag") && !js["parity_tag"].is_null())
        s.parity_tag = js["parity_tag"].get<std::string>();
      s.asymptote_energy = js.at("asymptote_energy").get<double>();
      if (js.contains("rigid_r_e") && !js["rigid_r_e"].is_null()) s.rigid_r_e = js["rigid_r_e"].get<double>();
      if (js.contains("rigid_j_max") && !js["rigid_j_max"].is_null())
        s.rigid_j_max = js["rigid_j_max"].get<int>();
      const std::string file = js.value("potential", detail::default_potential_file(s.label));
      auto table = detail::read_curve(dir / file, detail::CurveQuantity::energy);
      ds.potentials.emplace(s.label, PotentialCurve(s.label, std::move(table.r), std::move(table.value),
                                                    s.asymptote_energy));
      ds.states.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw DataError("molecule.json: " + std::string(e.what()));
  }

  std::vector<fs::path> dipole_files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string fname = entry.path().filename().string();
    if (fname.starts_with("dip__") && fname.ends_with(".dat")) dipole_files.push_back(entry.path());
  }
  std::sort(dipole_files.begin(), dipole_files.end());
  for (const auto& path : dipole_files) {
    const std::string fname = path.filename().string();
    const std::string stem = fname.substr(5, fname.size() - 5 - 4);
    const auto sep = stem.find("__");
    if (sep == std::string::npos) throw DataError(fname + ": expected dip__<bra>__<ket>.dat");
    std::string bra = stem.substr(0, sep), ket = stem.substr(sep + 2);
    if (!ds.has_state(bra)) throw DataError(fname + ": dangling state reference '" + bra + "'");
    if (!ds.has_state(ket)) throw DataError(fname + ": dangling state reference '" + ket + "'");
    auto table = detail::read_curve(path, detail::CurveQuantity::dipole);
    ds.dipoles.emplace_back(std::move(bra), std::move(ket), std::move(table.r), std::move(table.value));
  }

  ds.validate();
  return ds;
}

/// Writes `ds` in the directory format read by load_dataset (17 significant digits).
inline void write_dataset(const MoleculeDataset& ds, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  using nlohmann::ordered_json;
  ds.validate();
  fs::create_directories(dir);

  ordered_json meta;
  meta["name"] = ds.name;
  if (!ds.description.empty()) meta["description"] = ds.description;
  meta["reduced_mass"] = ds.reduced_mass;
  meta["ground_label"] = ds.ground_label;
  meta["default_gamma"] = ds.default_gamma;
  meta["states"] = ordered_json::array();
  for (const auto& s : ds.states) {
    ordered_json js;
    js["label"] = s.label;
    js["omega"] = s.omega;
    if (s.parity_tag) js["parity_tag"] = *s.parity_tag;
    js["asymptote_energy"] = s.asymptote_energy;
    if (s.rigid_r_e) js["rigid_r_e"] = *s.rigid_r_e;
    if (s.rigid_j_max) js["rigid_j_max"] = *s.rigid_j_max;
    js["potential"] = detail::default_potential_file(s.label);
    meta["states"].push_back(std::move(js));
    const auto& pot = ds.potential(s.label);
    detail::write_curve(dir / detail::default_potential_file(s.label), "potential " + s.label, "cm-1",
                        pot.r(), pot.v());
  }
  for (const auto& d : ds.dipoles)
    detail::write_curve(dir / detail::dipole_file(d.bra(), d.ket()), "dipole " + d.bra() + " " + d.ket(),
                        "debye", d.r(), d.d());

  std::ofstream out(dir / "molecule.json");
  out << meta.dump(2) << "\n";
}

}  // namespace polarmol
