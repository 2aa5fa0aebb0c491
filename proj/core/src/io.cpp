#include "tmdyn/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <unistd.h>

#include "json.hpp"

namespace tmdyn {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string write_nda_artifact(const NdaMachine& nda) {
  const auto& coding = nda.coding();
  ordered_json doc;
  doc["format"] = "tmdyn-nda";
  doc["version"] = 1;
  ordered_json c;
  c["blank"] = coding.symbol_names().front();
  c["base_left"] = coding.base_left();
  c["base_right"] = coding.base_right();
  c["symbols"] = ordered_json::array();
  for (std::size_t i = 0; i < coding.symbol_names().size(); ++i) {
    c["symbols"].push_back({{"name", coding.symbol_names()[i]}, {"number", coding.symbol_numbers()[i]}});
  }
  c["states"] = ordered_json::array();
  for (std::size_t i = 0; i < coding.state_names().size(); ++i) {
    ordered_json s{{"name", coding.state_names()[i]}, {"number", coding.state_numbers()[i]}};
    if (nda.source()) s["final"] = nda.source()->is_final(State{static_cast<std::uint32_t>(i)});
    c["states"].push_back(std::move(s));
  }
  doc["coding"] = std::move(c);
  doc["branches"] = ordered_json::array();
  for (std::size_t i = 0; i < nda.branches().size(); ++i) {
    const auto& b = nda.branches()[i];
    const auto& idx = b.cell.index;
    ordered_json rec;
    rec["index"] = i;
    rec["cell"] = {{"head", coding.symbol_names().at(idx.head.index)},
                   {"state", coding.state_names().at(idx.state.index)},
                   {"next", idx.next ? ordered_json(coding.symbol_names().at(idx.next->index)) : ordered_json()}};
    rec["x"] = {b.cell.rect.ix().lo().str(), b.cell.rect.ix().hi().str()};
    rec["y"] = {b.cell.rect.iy().lo().str(), b.cell.rect.iy().hi().str()};
    rec["lambda_x"] = b.scale_x.str();
    rec["a_x"] = b.translation_x.str();
    rec["lambda_y"] = b.scale_y.str();
    rec["a_y"] = b.translation_y.str();
    doc["branches"].push_back(std::move(rec));
  }
  return doc.dump(2) + "\n";
}

NdaMachine read_nda_artifact(const std::string& text) {
  try {
    const auto doc = ordered_json::parse(text);
    if (doc.at("format") != "tmdyn-nda" || doc.at("version") != 1) throw FormatError("not a tmdyn-nda v1 artifact");
    const auto& c = doc.at("coding");
    std::vector<std::string> symbol_names;
    std::vector<std::string> state_names;
    std::vector<std::uint32_t> symbol_numbers;
    std::vector<std::uint32_t> state_numbers;
    for (const auto& s : c.at("symbols")) {
      symbol_names.push_back(s.at("name").get<std::string>());
      symbol_numbers.push_back(s.at("number").get<std::uint32_t>());
    }
    for (const auto& s : c.at("states")) {
      state_names.push_back(s.at("name").get<std::string>());
      state_numbers.push_back(s.at("number").get<std::uint32_t>());
    }
    GoedelCoding coding(symbol_names, state_names, symbol_numbers, state_numbers);
    if (c.at("base_left") != coding.base_left() || c.at("base_right") != coding.base_right()) {
      throw FormatError("artifact bases disagree with its coding table");
    }

    const auto find = [](const std::vector<std::string>& names, const std::string& name) {
      const auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) throw FormatError("branch refers to unknown name '" + name + "'");
      return static_cast<std::uint32_t>(it - names.begin());
    };
    const auto rational = [](const ordered_json& v) { return Rational::parse(v.get<std::string>()); };

    std::vector<AffineBranch> branches;
    for (const auto& rec : doc.at("branches")) {
      AffineBranch b;
      const auto& cell = rec.at("cell");
      b.cell.index.head = Symbol{find(symbol_names, cell.at("head").get<std::string>())};
      b.cell.index.state = State{find(state_names, cell.at("state").get<std::string>())};
      if (!cell.at("next").is_null()) b.cell.index.next = Symbol{find(symbol_names, cell.at("next").get<std::string>())};
      b.cell.rect = Rect(Interval(rational(rec.at("x").at(0)), rational(rec.at("x").at(1))),
                         Interval(rational(rec.at("y").at(0)), rational(rec.at("y").at(1))));
      b.scale_x = rational(rec.at("lambda_x"));
      b.translation_x = rational(rec.at("a_x"));
      b.scale_y = rational(rec.at("lambda_y"));
      b.translation_y = rational(rec.at("a_y"));
      branches.push_back(std::move(b));
    }
    return NdaMachine(std::move(coding), std::move(branches));
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("invalid NDA artifact: ") + e.what());
  }
}

std::string write_macro_csv(const MacroTrajectory& run) {
  std::ostringstream out;
  out << "step,x_lo,x_hi,y_lo,y_hi,cell,halted\n";
  for (std::size_t t = 0; t < run.rects.size(); ++t) {
    const auto& r = run.rects[t];
    const long cell = t < run.cells.size() && run.cells[t] ? static_cast<long>(*run.cells[t]) : -1;
    const bool halted = run.halted && t + 1 == run.rects.size();
    out << t << ',' << r.ix().lo() << ',' << r.ix().hi() << ',' << r.iy().lo() << ',' << r.iy().hi() << ',' << cell
        << ',' << (halted ? 1 : 0) << '\n';
  }
  return out.str();
}

std::vector<MacroRow> read_macro_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<MacroRow> rows;
  if (!std::getline(in, line)) throw FormatError("empty trajectory file: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "step,x_lo,x_hi,y_lo,y_hi,cell,halted") throw FormatError("unexpected trajectory header '" + line + "'");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 7) throw FormatError("line " + std::to_string(line_no) + ": expected 7 fields");
    try {
      MacroRow row;
      row.step = std::stoul(fields[0]);
      row.rect = Rect(Interval(Rational::parse(fields[1]), Rational::parse(fields[2])),
                      Interval(Rational::parse(fields[3]), Rational::parse(fields[4])));
      row.cell = std::stol(fields[5]);
      row.halted = fields[6] == "1";
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

std::string write_point_csv(const PointTrajectory& run) {
  std::ostringstream out;
  out << "step,x,y,cell,halted\n";
  for (std::size_t t = 0; t < run.points.size(); ++t) {
    const long cell = t < run.cells.size() && run.cells[t] ? static_cast<long>(*run.cells[t]) : -1;
    const bool halted = run.halted && t + 1 == run.points.size();
    out << t << ',' << run.points[t].x << ',' << run.points[t].y << ',' << cell << ',' << (halted ? 1 : 0) << '\n';
  }
  return out.str();
}

namespace {

std::string format_value(const Rational& v) { return v.str(); }

std::string format_value(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

template <class T>
std::string write_density_csv(const GridDensity<T>& u) {
  std::ostringstream out;
  out << "iy,ix,mass\n";
  for (std::size_t k = 0; k < u.mass.size(); ++k) {
    out << k / u.n << ',' << k % u.n << ',' << format_value(u.mass[k]) << '\n';
  }
  return out.str();
}

std::string write_density_pgm(const FloatDensity& u) {
  const double peak = u.mass.empty() ? 0.0 : *std::max_element(u.mass.begin(), u.mass.end());
  std::string out = "P5\n" + std::to_string(u.n) + " " + std::to_string(u.n) + "\n255\n";
  for (std::size_t row = 0; row < u.n; ++row) {
    const std::size_t iy = u.n - 1 - row;
    for (std::size_t ix = 0; ix < u.n; ++ix) {
      const double m = u.mass[iy * u.n + ix];
      const double level = peak > 0.0 ? 255.0 * m / peak : 0.0;
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(level + 0.5, 0.0, 255.0))));
    }
  }
  return out;
}

template <class T>
std::string write_transfer_coo(const TransferMatrix<T>& m) {
  std::ostringstream out;
  for (const auto& [target, source, value] : m.triplets()) {
    out << target << ' ' << source << ' ' << format_value(value) << '\n';
  }
  return out.str();
}

template std::string write_density_csv(const ExactDensity&);
template std::string write_density_csv(const FloatDensity&);
template std::string write_transfer_coo(const TransferMatrix<Rational>&);
template std::string write_transfer_coo(const TransferMatrix<double>&);

}  // namespace tmdyn
