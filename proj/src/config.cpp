#include "modscat/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace modscat {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- minimal TOML-like reader: tables, scalars, inline arrays ----

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos)
    return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"')
      in_str = !in_str;
    else if (line[i] == '#' && !in_str)
      return line.substr(0, i);
  }
  return line;
}

json parse_scalar(const std::string& tok, int line_no) {
  std::string t = trim(tok);
  if (t.empty())
    throw std::invalid_argument("config: empty value on line " +
                                std::to_string(line_no));
  if (t.front() == '"') {
    if (t.size() < 2 || t.back() != '"')
      throw std::invalid_argument("config: unterminated string on line " +
                                  std::to_string(line_no));
    return t.substr(1, t.size() - 2);
  }
  if (t == "true")
    return true;
  if (t == "false")
    return false;
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    throw std::invalid_argument("config: bad value '" + t + "' on line " +
                                std::to_string(line_no));
  return v;
}

json parse_value(const std::string& tok, int line_no) {
  std::string t = trim(tok);
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']')
      throw std::invalid_argument("config: unterminated array on line " +
                                  std::to_string(line_no));
    json arr = json::array();
    std::string inner = t.substr(1, t.size() - 2);
    std::string cur;
    bool in_str = false;
    for (char c : inner) {
      if (c == '"')
        in_str = !in_str;
      if (c == ',' && !in_str) {
        if (!trim(cur).empty())
          arr.push_back(parse_scalar(cur, line_no));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!trim(cur).empty())
      arr.push_back(parse_scalar(cur, line_no));
    return arr;
  }
  return parse_scalar(t, line_no);
}

json toml_to_json(const std::string& text) {
  json root = json::object();
  json* table = &root;
  std::istringstream is(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty())
      continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: bad table header on line " +
                                    std::to_string(line_no));
      std::string name = trim(line.substr(1, line.size() - 2));
      table = &root;
      std::size_t pos = 0;
      while (pos != std::string::npos) {
        std::size_t dot = name.find('.', pos);
        std::string part = name.substr(
            pos, dot == std::string::npos ? std::string::npos : dot - pos);
        table = &((*table)[trim(part)]);
        pos = dot == std::string::npos ? dot : dot + 1;
      }
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value on line " +
                                  std::to_string(line_no));
    std::string key = trim(line.substr(0, eq));
    (*table)[key] = parse_value(line.substr(eq + 1), line_no);
  }
  return root;
}

// ---- mapping between json tables and ExperimentConfig ----

template <class T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.is_object() || !j.contains(key))
    return fallback;
  return j.at(key).get<T>();
}

ExperimentConfig config_from_json_obj(const json& j) {
  ExperimentConfig c;
  const json& grid = j.value("grid", json::object());
  c.dim = static_cast<int>(get_or<double>(grid, "dim", c.dim));
  c.points = static_cast<int>(get_or<double>(grid, "points", c.points));
  c.half_width = get_or<double>(grid, "half_width", c.half_width);

  const json& nl = j.value("nonlinearity", json::object());
  c.nonlinearity = Nonlinearity::parse(
      get_or<std::string>(nl, "kind", "power"),
      static_cast<int>(get_or<double>(nl, "n", 1)));

  const json& run = j.value("run", json::object());
  std::string frame = get_or<std::string>(run, "frame", "direct");
  if (frame == "direct")
    c.frame = Frame::direct;
  else if (frame == "pseudoconformal")
    c.frame = Frame::pseudoconformal;
  else
    throw std::invalid_argument("config: unknown frame " + frame);
  c.dt = get_or<double>(run, "dt", c.dt);
  c.t_end = get_or<double>(run, "t_end", c.t_end);
  c.output_dir = get_or<std::string>(run, "output_dir", c.output_dir);
  c.save_snapshots = get_or<bool>(run, "save_snapshots", c.save_snapshots);

  const json& id = j.value("initial_data", json::object());
  c.initial_data.name = get_or<std::string>(id, "name", "gaussian");
  c.initial_data.seed =
      static_cast<std::uint64_t>(get_or<double>(id, "seed", 1));
  c.initial_data.params.clear();
  if (id.is_object())
    for (auto it = id.begin(); it != id.end(); ++it)
      if (it.key() != "name" && it.key() != "seed" && it->is_number())
        c.initial_data.params[it.key()] = it->get<double>();

  const json& sch = j.value("schedule", json::object());
  c.schedule.kind = get_or<std::string>(sch, "kind", "dyadic_fine");
  c.schedule.per_octave =
      static_cast<int>(get_or<double>(sch, "per_octave", 16));
  c.schedule.prefix_nodes =
      static_cast<int>(get_or<double>(sch, "prefix_nodes", 64));
  c.schedule.warmup_nodes =
      static_cast<int>(get_or<double>(sch, "warmup_nodes", 16));
  c.schedule.spacing = get_or<double>(sch, "spacing", 0.5);
  c.schedule.times.clear();
  if (sch.contains("times"))
    for (const json& v : sch.at("times"))
      c.schedule.times.push_back(v.get<double>());

  const json& obs = j.value("observers", json::object());
  if (obs.contains("enabled")) {
    c.observers.clear();
    for (const json& v : obs.at("enabled"))
      c.observers.push_back(v.get<std::string>());
  }

  const json& conv = j.value("conventions", json::object());
  c.phase_sign =
      parse_phase_sign(get_or<std::string>(conv, "phase_sign", "plus"));
  c.phase_lower_limit = get_or<double>(conv, "phase_lower_limit", 1.0);
  c.besov_s_index = get_or<double>(conv, "besov_s_index", 0.0);

  const json& mon = j.value("monitor", json::object());
  c.monitor.mass_drift_tol =
      get_or<double>(mon, "mass_drift_tol", c.monitor.mass_drift_tol);
  c.monitor.boundary_shell_fraction = get_or<double>(
      mon, "boundary_shell_fraction", c.monitor.boundary_shell_fraction);
  c.monitor.boundary_mass_tol =
      get_or<double>(mon, "boundary_mass_tol", c.monitor.boundary_mass_tol);
  c.monitor.spectral_tail_tol =
      get_or<double>(mon, "spectral_tail_tol", c.monitor.spectral_tail_tol);

  c.validate();
  return c;
}

json config_to_json_obj(const ExperimentConfig& c) {
  json j;
  j["grid"] = {{"dim", c.dim},
               {"points", c.points},
               {"half_width", c.half_width}};
  j["nonlinearity"] = {{"kind", c.nonlinearity.kind_name()},
                       {"n", c.nonlinearity.n}};
  j["run"] = {{"frame", c.frame == Frame::direct ? "direct"
                                                 : "pseudoconformal"},
              {"dt", c.dt},
              {"t_end", c.t_end},
              {"output_dir", c.output_dir},
              {"save_snapshots", c.save_snapshots}};
  json id;
  id["name"] = c.initial_data.name;
  id["seed"] = static_cast<double>(c.initial_data.seed);
  for (const auto& [k, v] : c.initial_data.params)
    id[k] = v;
  j["initial_data"] = id;
  json sch;
  sch["kind"] = c.schedule.kind;
  sch["per_octave"] = c.schedule.per_octave;
  sch["prefix_nodes"] = c.schedule.prefix_nodes;
  sch["warmup_nodes"] = c.schedule.warmup_nodes;
  sch["spacing"] = c.schedule.spacing;
  if (!c.schedule.times.empty())
    sch["times"] = c.schedule.times;
  j["schedule"] = sch;
  j["observers"] = {{"enabled", c.observers}};
  j["conventions"] = {{"phase_sign", phase_sign_name(c.phase_sign)},
                      {"phase_lower_limit", c.phase_lower_limit},
                      {"besov_s_index", c.besov_s_index}};
  j["monitor"] = {
      {"mass_drift_tol", c.monitor.mass_drift_tol},
      {"boundary_shell_fraction", c.monitor.boundary_shell_fraction},
      {"boundary_mass_tol", c.monitor.boundary_mass_tol},
      {"spectral_tail_tol", c.monitor.spectral_tail_tol}};
  return j;
}

void emit_value(std::ostringstream& os, const json& v) {
  if (v.is_string())
    os << '"' << v.get<std::string>() << '"';
  else if (v.is_boolean())
    os << (v.get<bool>() ? "true" : "false");
  else if (v.is_number_integer())
    os << v.get<long long>();
  else if (v.is_number())
    os << fmt_double(v.get<double>());
  else if (v.is_array()) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i)
        os << ", ";
      emit_value(os, v[i]);
    }
    os << ']';
  }
}

} // namespace

void ExperimentConfig::validate() const {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("config: dim must be 1 or 2");
  if (!(dt > 0))
    throw std::invalid_argument("config: dt must be positive");
  if (!(t_end > 0))
    throw std::invalid_argument("config: t_end must be positive");
  if (!(half_width > 0))
    throw std::invalid_argument("config: half_width must be positive");
  nonlinearity.validate();
  if (frame == Frame::pseudoconformal && t_end >= 1.0)
    throw std::invalid_argument(
        "config: pseudoconformal runs need t_end (tau) < 1");
  if (phase_lower_limit != 1.0)
    throw std::invalid_argument(
        "config: the phase integral starts at t = 1; other lower limits are "
        "not supported");
  if (schedule.kind != "dyadic_fine" && schedule.kind != "uniform" &&
      schedule.kind != "explicit")
    throw std::invalid_argument("config: unknown schedule kind " +
                                schedule.kind);
  for (const std::string& ob : observers)
    if (ob != "conservation" && ob != "scattering" && ob != "cpce" &&
        ob != "decay" && ob != "contrast")
      throw std::invalid_argument("config: unknown observer " + ob);
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return config_to_json_obj(*this) == config_to_json_obj(o);
}

ExperimentConfig parse_config_text(const std::string& text) {
  return config_from_json_obj(toml_to_json(text));
}

ExperimentConfig parse_config_json_text(const std::string& text) {
  return config_from_json_obj(json::parse(text));
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is)
    throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
    return parse_config_json_text(ss.str());
  return parse_config_text(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  json j = config_to_json_obj(cfg);
  std::ostringstream os;
  const char* order[] = {"grid",     "nonlinearity", "run",
                         "initial_data", "schedule", "observers",
                         "conventions",  "monitor"};
  for (const char* section : order) {
    os << '[' << section << "]\n";
    for (auto it = j.at(section).begin(); it != j.at(section).end(); ++it) {
      os << it.key() << " = ";
      emit_value(os, it.value());
      os << '\n';
    }
    os << '\n';
  }
  return os.str();
}

std::string config_json(const ExperimentConfig& cfg) {
  return config_to_json_obj(cfg).dump(2);
}

std::string config_run_id(const ExperimentConfig& cfg) {
  std::string s = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

} // namespace modscat
