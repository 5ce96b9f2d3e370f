#include "radialcone/config.hpp"
#include "radialcone/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace radialcone {

namespace {

// ---- minimal TOML-style document model --------------------------------------

struct Value {
  enum class Kind { boolean, number, string, array } kind = Kind::number;
  bool b = false;
  double num = 0.0;
  bool is_int = false;
  std::string str;
  std::vector<Value> arr;
  int line = 0;
};

struct Entry {
  Value value;
  bool consumed = false;
};

using Table = std::map<std::string, Entry>;

struct Document {
  std::map<std::string, Table> sections;
  std::map<std::string, int> section_lines;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Value parse_scalar(const std::string& token, int line) {
  Value v;
  v.line = line;
  if (token == "true" || token == "false") {
    v.kind = Value::Kind::boolean;
    v.b = token == "true";
    return v;
  }
  if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
    v.kind = Value::Kind::string;
    std::string out;
    for (std::size_t i = 1; i + 1 < token.size(); ++i) {
      if (token[i] == '\\' && i + 2 < token.size()) ++i;
      out += token[i];
    }
    v.str = out;
    return v;
  }
  char* end = nullptr;
  const double num = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0')
    throw ConfigError("cannot parse value '" + token + "'", line);
  v.kind = Value::Kind::number;
  v.num = num;
  v.is_int = token.find_first_of(".eE") == std::string::npos;
  return v;
}

Value parse_value(const std::string& raw, int line) {
  const std::string token = trim(raw);
  if (token.empty()) throw ConfigError("missing value", line);
  if (token.front() == '[') {
    if (token.back() != ']') throw ConfigError("unterminated array", line);
    Value v;
    v.kind = Value::Kind::array;
    v.line = line;
    const std::string body = token.substr(1, token.size() - 2);
    std::string cur;
    bool in_quote = false;
    for (char ch : body) {
      if (ch == '"') in_quote = !in_quote;
      if (ch == ',' && !in_quote) {
        if (!trim(cur).empty()) v.arr.push_back(parse_scalar(trim(cur), line));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!trim(cur).empty()) v.arr.push_back(parse_scalar(trim(cur), line));
    return v;
  }
  return parse_scalar(token, line);
}

std::string strip_comment(const std::string& line) {
  bool in_quote = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quote = !in_quote;
    if (line[i] == '#' && !in_quote) return line.substr(0, i);
  }
  return line;
}

Document parse_document(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header", line_no);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError("empty section name", line_no);
      doc.sections[section];
      doc.section_lines.emplace(section, line_no);
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
    if (section.empty()) throw ConfigError("key before any [section]", line_no);
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("empty key", line_no);
    Table& tab = doc.sections[section];
    if (tab.count(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
    tab[key] = Entry{parse_value(line.substr(eq + 1), line_no), false};
  }
  return doc;
}

// ---- typed extraction --------------------------------------------------------

class SectionReader {
public:
  SectionReader(Document& doc, const std::string& name) : name_(name) {
    auto it = doc.sections.find(name);
    tab_ = it == doc.sections.end() ? nullptr : &it->second;
  }

  template <typename F>
  void with(const std::string& key, F&& apply) {
    if (!tab_) return;
    auto it = tab_->find(key);
    if (it == tab_->end()) return;
    it->second.consumed = true;
    apply(it->second.value);
  }

  double as_double(const Value& v) const {
    if (v.kind != Value::Kind::number)
      throw ConfigError("[" + name_ + "] expected a number", v.line);
    return v.num;
  }
  int as_int(const Value& v) const {
    if (v.kind != Value::Kind::number || !v.is_int)
      throw ConfigError("[" + name_ + "] expected an integer", v.line);
    return static_cast<int>(v.num);
  }
  bool as_bool(const Value& v) const {
    if (v.kind != Value::Kind::boolean)
      throw ConfigError("[" + name_ + "] expected true/false", v.line);
    return v.b;
  }
  std::string as_string(const Value& v) const {
    if (v.kind != Value::Kind::string)
      throw ConfigError("[" + name_ + "] expected a quoted string", v.line);
    return v.str;
  }
  std::vector<double> as_double_array(const Value& v) const {
    if (v.kind != Value::Kind::array)
      throw ConfigError("[" + name_ + "] expected an array", v.line);
    std::vector<double> out;
    for (const auto& e : v.arr) out.push_back(as_double(e));
    return out;
  }
  std::vector<int> as_int_array(const Value& v) const {
    if (v.kind != Value::Kind::array)
      throw ConfigError("[" + name_ + "] expected an array", v.line);
    std::vector<int> out;
    for (const auto& e : v.arr) out.push_back(as_int(e));
    return out;
  }
  std::vector<std::string> as_string_array(const Value& v) const {
    if (v.kind != Value::Kind::array)
      throw ConfigError("[" + name_ + "] expected an array", v.line);
    std::vector<std::string> out;
    for (const auto& e : v.arr) out.push_back(as_string(e));
    return out;
  }

private:
  std::string name_;
  Table* tab_;
};

void reject_unknown(const Document& doc, const std::set<std::string>& known_sections) {
  for (const auto& [name, tab] : doc.sections) {
    if (!known_sections.count(name))
      throw ConfigError("unknown section [" + name + "]", doc.section_lines.at(name));
    for (const auto& [key, entry] : tab)
      if (!entry.consumed)
        throw ConfigError("unknown key '" + key + "' in [" + name + "]", entry.value.line);
  }
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_double_array(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt_double(xs[i]);
  }
  return out + "]";
}

std::string fmt_int_array(const std::vector<int>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(xs[i]);
  }
  return out + "]";
}

std::string fmt_string_array(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + xs[i] + "\"";
  }
  return out + "]";
}

} // namespace

double RunConfig::Grid::resolved_h() const {
  if (h) return *h;
  if (cells) return R / *cells;
  return R / 1024.0;
}

RunConfig RunConfig::parse_string(const std::string& text) {
  Document doc = parse_document(text);
  RunConfig c;

  {
    SectionReader s(doc, "model");
    s.with("n", [&](const Value& v) { c.model.n = s.as_int(v); });
    s.with("alpha", [&](const Value& v) { c.model.alpha = s.as_double(v); });
    s.with("profile", [&](const Value& v) { c.model.profile = s.as_string(v); });
    s.with("exponent", [&](const Value& v) { c.model.exponent = s.as_double(v); });
  }
  {
    SectionReader s(doc, "grid");
    s.with("R", [&](const Value& v) { c.grid.R = s.as_double(v); });
    s.with("h", [&](const Value& v) { c.grid.h = s.as_double(v); });
    s.with("cells", [&](const Value& v) { c.grid.cells = s.as_int(v); });
  }
  {
    SectionReader s(doc, "solver");
    s.with("cfl", [&](const Value& v) { c.solver.cfl = s.as_double(v); });
    s.with("t0", [&](const Value& v) { c.solver.t0 = s.as_double(v); });
    s.with("t_end", [&](const Value& v) { c.solver.t_end = s.as_double(v); });
    s.with("snapshot_stride", [&](const Value& v) { c.solver.snapshot_stride = s.as_int(v); });
    s.with("blowup_threshold", [&](const Value& v) { c.solver.blowup_threshold = s.as_double(v); });
  }
  {
    SectionReader s(doc, "data");
    s.with("family", [&](const Value& v) { c.data.family = s.as_string(v); });
    s.with("amplitude", [&](const Value& v) { c.data.amplitude = s.as_double(v); });
    s.with("center", [&](const Value& v) { c.data.center = s.as_double(v); });
    s.with("width", [&](const Value& v) { c.data.width = s.as_double(v); });
    s.with("v_mode", [&](const Value& v) { c.data.v_mode = s.as_string(v); });
  }
  {
    SectionReader s(doc, "diagnostics");
    s.with("apex", [&](const Value& v) { c.diagnostics.apex = s.as_double(v); });
    s.with("region_S", [&](const Value& v) { c.diagnostics.region_S = s.as_double_array(v); });
    s.with("region_T", [&](const Value& v) { c.diagnostics.region_T = s.as_double_array(v); });
    s.with("dyadic_t0", [&](const Value& v) { c.diagnostics.dyadic_t0 = s.as_double(v); });
    s.with("dyadic_count", [&](const Value& v) { c.diagnostics.dyadic_count = s.as_int(v); });
    s.with("lemma_scales",
           [&](const Value& v) { c.diagnostics.lemma_scales = s.as_double_array(v); });
    s.with("energy_flux_rel_tol",
           [&](const Value& v) { c.diagnostics.energy_flux_rel_tol = s.as_double(v); });
  }
  {
    SectionReader s(doc, "output");
    s.with("directory", [&](const Value& v) { c.output.directory = s.as_string(v); });
    s.with("write_series", [&](const Value& v) { c.output.write_series = s.as_bool(v); });
    s.with("write_slices", [&](const Value& v) { c.output.write_slices = s.as_bool(v); });
  }
  {
    SectionReader s(doc, "mms");
    s.with("h_levels", [&](const Value& v) { c.mms.h_levels = s.as_double_array(v); });
    s.with("R", [&](const Value& v) { c.mms.R = s.as_double(v); });
    s.with("t0", [&](const Value& v) { c.mms.t0 = s.as_double(v); });
    s.with("t_end", [&](const Value& v) { c.mms.t_end = s.as_double(v); });
    s.with("cfl", [&](const Value& v) { c.mms.cfl = s.as_double(v); });
    s.with("amplitude", [&](const Value& v) { c.mms.amplitude = s.as_double(v); });
    s.with("omega", [&](const Value& v) { c.mms.omega = s.as_double(v); });
    s.with("order_min", [&](const Value& v) { c.mms.order_min = s.as_double(v); });
    s.with("order_max", [&](const Value& v) { c.mms.order_max = s.as_double(v); });
    s.with("origin_closure", [&](const Value& v) { c.mms.origin_closure = s.as_string(v); });
  }
  {
    SectionReader s(doc, "sweep");
    s.with("amplitude", [&](const Value& v) { c.sweep.amplitude = s.as_double_array(v); });
    s.with("n", [&](const Value& v) { c.sweep.n = s.as_int_array(v); });
    s.with("alpha", [&](const Value& v) { c.sweep.alpha = s.as_double_array(v); });
    s.with("profile", [&](const Value& v) { c.sweep.profile = s.as_string_array(v); });
  }

  reject_unknown(doc, {"model", "grid", "solver", "data", "diagnostics", "output", "mms", "sweep"});
  return c;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

void RunConfig::validate() const {
  if (model.n < 2) throw ConfigError("model.n must be >= 2");
  if (!(model.alpha > 0.0)) throw ConfigError("model.alpha must be > 0");
  if (grid.h && grid.cells) throw ConfigError("specify grid.h or grid.cells, not both");
  if (!(grid.R > 0.0)) throw ConfigError("grid.R must be > 0");
  if (!(grid.resolved_h() > 0.0)) throw ConfigError("grid spacing must be > 0");
  if (!(solver.cfl > 0.0 && solver.cfl <= 0.9))
    throw ConfigError("solver.cfl must satisfy 0 < cfl <= 0.9");
  if (!(solver.t_end > solver.t0)) throw ConfigError("solver.t_end must exceed solver.t0");
  if (solver.snapshot_stride < 1) throw ConfigError("solver.snapshot_stride must be >= 1");
  if (data.family != "bump" && data.family != "zero")
    throw ConfigError("data.family must be 'bump' or 'zero'");
  if (data.v_mode != "zero" && data.v_mode != "outgoing")
    throw ConfigError("data.v_mode must be 'zero' or 'outgoing'");
  if (diagnostics.region_S.size() != diagnostics.region_T.size())
    throw ConfigError("diagnostics.region_S and region_T must have equal length");
  for (std::size_t i = 0; i < diagnostics.region_S.size(); ++i)
    if (!(diagnostics.region_S[i] > 0.0 && diagnostics.region_S[i] <= diagnostics.region_T[i]))
      throw ConfigError("diagnostic regions need 0 < S <= T");
  if (diagnostics.dyadic_count < 1) throw ConfigError("diagnostics.dyadic_count must be >= 1");
  for (std::size_t i = 0; i + 1 < diagnostics.lemma_scales.size(); ++i)
    if (!(diagnostics.lemma_scales[i] > diagnostics.lemma_scales[i + 1]))
      throw ConfigError("diagnostics.lemma_scales must be strictly decreasing");
  if (mms.origin_closure != "odd" && mms.origin_closure != "even")
    throw ConfigError("mms.origin_closure must be 'odd' or 'even'");
  if (!(mms.order_min < mms.order_max)) throw ConfigError("mms order band is empty");
}

std::string RunConfig::serialize() const {
  std::ostringstream out;
  out << "[model]\n";
  out << "n = " << model.n << "\n";
  out << "alpha = " << fmt_double(model.alpha) << "\n";
  out << "profile = \"" << model.profile << "\"\n";
  if (model.exponent) out << "exponent = " << fmt_double(*model.exponent) << "\n";

  out << "\n[grid]\n";
  out << "R = " << fmt_double(grid.R) << "\n";
  if (grid.h) out << "h = " << fmt_double(*grid.h) << "\n";
  if (grid.cells) out << "cells = " << *grid.cells << "\n";

  out << "\n[solver]\n";
  out << "cfl = " << fmt_double(solver.cfl) << "\n";
  out << "t0 = " << fmt_double(solver.t0) << "\n";
  out << "t_end = " << fmt_double(solver.t_end) << "\n";
  out << "snapshot_stride = " << solver.snapshot_stride << "\n";
  if (solver.blowup_threshold)
    out << "blowup_threshold = " << fmt_double(*solver.blowup_threshold) << "\n";

  out << "\n[data]\n";
  out << "family = \"" << data.family << "\"\n";
  out << "amplitude = " << fmt_double(data.amplitude) << "\n";
  out << "center = " << fmt_double(data.center) << "\n";
  out << "width = " << fmt_double(data.width) << "\n";
  out << "v_mode = \"" << data.v_mode << "\"\n";

  out << "\n[diagnostics]\n";
  if (diagnostics.apex) out << "apex = " << fmt_double(*diagnostics.apex) << "\n";
  out << "region_S = " << fmt_double_array(diagnostics.region_S) << "\n";
  out << "region_T = " << fmt_double_array(diagnostics.region_T) << "\n";
  out << "dyadic_t0 = " << fmt_double(diagnostics.dyadic_t0) << "\n";
  out << "dyadic_count = " << diagnostics.dyadic_count << "\n";
  out << "lemma_scales = " << fmt_double_array(diagnostics.lemma_scales) << "\n";
  out << "energy_flux_rel_tol = " << fmt_double(diagnostics.energy_flux_rel_tol) << "\n";

  out << "\n[output]\n";
  out << "directory = \"" << output.directory << "\"\n";
  out << "write_series = " << (output.write_series ? "true" : "false") << "\n";
  out << "write_slices = " << (output.write_slices ? "true" : "false") << "\n";

  out << "\n[mms]\n";
  out << "h_levels = " << fmt_double_array(mms.h_levels) << "\n";
  out << "R = " << fmt_double(mms.R) << "\n";
  out << "t0 = " << fmt_double(mms.t0) << "\n";
  out << "t_end = " << fmt_double(mms.t_end) << "\n";
  out << "cfl = " << fmt_double(mms.cfl) << "\n";
  out << "amplitude = " << fmt_double(mms.amplitude) << "\n";
  out << "omega = " << fmt_double(mms.omega) << "\n";
  out << "order_min = " << fmt_double(mms.order_min) << "\n";
  out << "order_max = " << fmt_double(mms.order_max) << "\n";
  out << "origin_closure = \"" << mms.origin_closure << "\"\n";

  if (!sweep.amplitude.empty() || !sweep.n.empty() || !sweep.alpha.empty() ||
      !sweep.profile.empty()) {
    out << "\n[sweep]\n";
    if (!sweep.amplitude.empty()) out << "amplitude = " << fmt_double_array(sweep.amplitude) << "\n";
    if (!sweep.n.empty()) out << "n = " << fmt_int_array(sweep.n) << "\n";
    if (!sweep.alpha.empty()) out << "alpha = " << fmt_double_array(sweep.alpha) << "\n";
    if (!sweep.profile.empty()) out << "profile = " << fmt_string_array(sweep.profile) << "\n";
  }
  return out.str();
}

} // namespace radialcone
