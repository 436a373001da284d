#include "chernform/scenario.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace chernform {

namespace {

struct Line {
  int number = 0;
  std::string key;
  std::string value;
  int value_column = 0;  // 1-based column where the value starts
  bool quoted = false;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_tokens(std::string_view s, char sep = ' ') {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    bool split = sep == ' ' ? std::isspace(static_cast<unsigned char>(c)) != 0 : c == sep;
    if (split) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double parse_double(const std::string& tok, int line) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty()) {
    throw ParseError("malformed number '" + tok + "'", line, 1);
  }
  return v;
}

long long parse_int(const std::string& tok, int line) {
  char* end = nullptr;
  long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || tok.empty()) {
    throw ParseError("malformed integer '" + tok + "'", line, 1);
  }
  return v;
}

bool parse_bool(const std::string& tok, int line) {
  if (tok == "true" || tok == "1" || tok == "yes") return true;
  if (tok == "false" || tok == "0" || tok == "no") return false;
  throw ParseError("expected a boolean, got '" + tok + "'", line, 1);
}

LatticeClass parse_class(const std::string& value, int line) {
  std::vector<Rational> coords;
  for (const auto& tok : split_tokens(value)) {
    try {
      coords.push_back(parse_rational(tok));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line, 1);
    }
  }
  if (coords.empty()) throw ParseError("empty lattice class", line, 1);
  return LatticeClass(std::move(coords));
}

Rational parse_rational_at(const std::string& value, int line) {
  try {
    return parse_rational(value);
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line, 1);
  }
}

Expression parse_expression_at(const Line& line) {
  try {
    return Expression::parse(line.value);
  } catch (const ParseError& e) {
    throw ParseError("in expression for '" + line.key + "': " + e.what(), line.number,
                     line.value_column + e.column - 1);
  }
}

FiberDescriptor parse_fiber(const Line& line) {
  FiberDescriptor f;
  bool saw_lambda = false;
  for (const auto& tok : split_tokens(line.value)) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) {
      throw ParseError("fiber fields must look like key=value, got '" + tok + "'", line.number, 1);
    }
    std::string key = tok.substr(0, eq);
    std::string val = tok.substr(eq + 1);
    if (key == "lambda") {
      f.lambda = val;
      saw_lambda = true;
    } else if (key == "genus") {
      f.genus = static_cast<int>(parse_int(val, line.number));
    } else if (key == "sing") {
      f.singularity_count = static_cast<int>(parse_int(val, line.number));
    } else if (key == "stable") {
      f.stable = parse_bool(val, line.number);
    } else if (key == "point") {
      for (const auto& kv : split_tokens(val, ',')) {
        auto colon = kv.find(':');
        if (colon == std::string::npos) {
          throw ParseError("point payload entries must look like key:value", line.number, 1);
        }
        f.point.payload[kv.substr(0, colon)] = kv.substr(colon + 1);
      }
    } else {
      throw ParseError("unknown fiber field '" + key + "'", line.number, 1);
    }
  }
  if (!saw_lambda) throw ParseError("fiber needs a lambda identifier", line.number, 1);
  return f;
}

class ScenarioBuilder {
 public:
  explicit ScenarioBuilder(const std::string& name) { scenario_.name = name; }

  void add(const std::string& section, const Line& line) {
    if (section == "metric") {
      metric(line);
    } else if (section == "patch") {
      patch(line);
    } else if (section == "grid") {
      grid(line);
    } else if (section == "run") {
      run(line);
    } else if (section == "lattice") {
      lattice(line);
    } else if (section == "family") {
      family(line);
    } else {
      throw ParseError("unknown section [" + section + "]", line.number, 1);
    }
  }

  Scenario finish() {
    if (metric_entries_ptr_) finish_metric();
    return std::move(scenario_);
  }

 private:
  void metric(const Line& line) {
    auto& m = ensure(scenario_.metric);
    if (line.key == "rank") {
      m.rank = static_cast<int>(parse_int(line.value, line.number));
      if (m.rank < 1 || m.rank > 9) {
        throw ParseError("metric rank must be in 1..9", line.number, 1);
      }
      return;
    }
    if (line.key == "mode") {
      if (line.value == "product") {
        m.mode = MetricMode::product;
      } else if (line.value == "fibration") {
        m.mode = MetricMode::fibration;
      } else {
        throw ParseError("metric mode must be product or fibration", line.number, 1);
      }
      return;
    }
    if (line.key.size() == 3 && line.key[0] == 'h' && std::isdigit((unsigned char)line.key[1]) &&
        std::isdigit((unsigned char)line.key[2])) {
      int i = line.key[1] - '1';
      int j = line.key[2] - '1';
      metric_entries_ptr_ = &ensure(scenario_.metric);
      entry_lines_[{i, j}] = line;
      return;
    }
    throw ParseError("unknown [metric] key '" + line.key + "'", line.number, 1);
  }

  void finish_metric() {
    auto& m = *scenario_.metric;
    m.entries.clear();
    m.entry_text.clear();
    for (int i = 0; i < m.rank; ++i) {
      for (int j = 0; j < m.rank; ++j) {
        auto it = entry_lines_.find({i, j});
        if (it == entry_lines_.end()) {
          throw ValidationError("scenario '" + scenario_.name + "': missing metric entry h" +
                                std::to_string(i + 1) + std::to_string(j + 1));
        }
        m.entry_text.push_back(it->second.value);
        m.entries.push_back(parse_expression_at(it->second));
      }
    }
    for (const auto& [key, line] : entry_lines_) {
      if (key.first >= m.rank || key.second >= m.rank) {
        throw ParseError("metric entry outside declared rank", line.number, 1);
      }
    }
  }

  void patch(const Line& line) {
    auto& p = ensure(scenario_.patch);
    auto range = [&](CoordinateRange& r) {
      auto toks = split_tokens(line.value);
      if (toks.size() != 2) throw ParseError("ranges need two numbers: lo hi", line.number, 1);
      r.lo = parse_double(toks[0], line.number);
      r.hi = parse_double(toks[1], line.number);
      if (!(r.lo < r.hi)) throw ParseError("range must satisfy lo < hi", line.number, 1);
    };
    if (line.key == "x1") return range(p.x1);
    if (line.key == "y1") return range(p.y1);
    if (line.key == "x2") return range(p.x2);
    if (line.key == "y2") return range(p.y2);
    if (line.key == "periodic_z1") {
      p.periodic_z1 = parse_bool(line.value, line.number);
      return;
    }
    if (line.key == "periodic_z2") {
      p.periodic_z2 = parse_bool(line.value, line.number);
      return;
    }
    throw ParseError("unknown [patch] key '" + line.key + "'", line.number, 1);
  }

  void grid(const Line& line) {
    auto& g = scenario_.grid;
    if (line.key == "resolution") {
      auto toks = split_tokens(line.value);
      if (toks.size() == 1) {
        g.resolution = GridSpec(static_cast<int>(parse_int(toks[0], line.number)));
      } else if (toks.size() == 4) {
        g.resolution = GridSpec(static_cast<int>(parse_int(toks[0], line.number)),
                                static_cast<int>(parse_int(toks[1], line.number)),
                                static_cast<int>(parse_int(toks[2], line.number)),
                                static_cast<int>(parse_int(toks[3], line.number)));
      } else {
        throw ParseError("resolution needs 1 or 4 integers", line.number, 1);
      }
      return;
    }
    if (line.key == "resolutions") {
      g.resolutions.clear();
      for (const auto& tok : split_tokens(line.value)) {
        g.resolutions.push_back(static_cast<int>(parse_int(tok, line.number)));
      }
      if (g.resolutions.empty()) throw ParseError("resolutions list is empty", line.number, 1);
      return;
    }
    if (line.key == "fd_step") {
      g.fd_step = parse_double(line.value, line.number);
      if (!(g.fd_step > 0)) throw ParseError("fd_step must be positive", line.number, 1);
      return;
    }
    if (line.key == "tolerance") {
      g.tolerance = parse_double(line.value, line.number);
      if (!(g.tolerance > 0)) throw ParseError("tolerance must be positive", line.number, 1);
      return;
    }
    throw ParseError("unknown [grid] key '" + line.key + "'", line.number, 1);
  }

  void run(const Line& line) {
    if (line.key == "commands") {
      scenario_.run.commands = split_tokens(line.value);
      return;
    }
    if (line.key == "convention") {
      conventions_from_string(line.value);  // validate
      scenario_.run.convention = line.value;
      return;
    }
    throw ParseError("unknown [run] key '" + line.key + "'", line.number, 1);
  }

  void lattice(const Line& line) {
    auto& l = ensure(scenario_.lattice);
    if (line.key == "q") {
      std::vector<std::vector<long long>> rows;
      for (const auto& row : split_tokens(line.value, '/')) {
        std::vector<long long> r;
        for (const auto& tok : split_tokens(row)) r.push_back(parse_int(tok, line.number));
        rows.push_back(std::move(r));
      }
      if (rows.empty()) throw ParseError("empty intersection form", line.number, 1);
      Eigen::MatrixXi q(rows.size(), rows.front().size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.front().size()) {
          throw ParseError("intersection form rows differ in length", line.number, 1);
        }
        for (std::size_t j = 0; j < rows[i].size(); ++j) q(i, j) = static_cast<int>(rows[i][j]);
      }
      try {
        l.form.emplace(q);
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), line.number, 1);
      }
      return;
    }
    if (line.key == "ample") {
      for (const auto& cls : split_tokens(line.value, ';')) {
        l.ample.push_back(parse_class(cls, line.number));
      }
      return;
    }
    if (line.key == "h") return void(l.h = parse_class(line.value, line.number));
    if (line.key == "hprime") return void(l.hprime = parse_class(line.value, line.number));
    if (line.key == "d") return void(l.d = parse_class(line.value, line.number));
    if (line.key == "delta") return void(l.delta = parse_rational_at(line.value, line.number));
    if (line.key == "delta_class") {
      l.delta_class = parse_class(line.value, line.number);
      return;
    }
    if (line.key == "r") return void(l.rank = parse_int(line.value, line.number));
    if (line.key == "bigr") return void(l.big_r = parse_rational_at(line.value, line.number));
    if (line.key == "n") return void(l.n = parse_int(line.value, line.number));
    if (line.key == "xi_c1a") return void(l.xi_c1a = parse_class(line.value, line.number));
    if (line.key == "xi_c1b") return void(l.xi_c1b = parse_class(line.value, line.number));
    if (line.key == "xi_rka") return void(l.xi_rka = parse_int(line.value, line.number));
    if (line.key == "xi_rkb") return void(l.xi_rkb = parse_int(line.value, line.number));
    throw ParseError("unknown [lattice] key '" + line.key + "'", line.number, 1);
  }

  void family(const Line& line) {
    auto& f = ensure(scenario_.family);
    if (line.key == "mode") {
      if (line.value == "constant-curve") {
        f.mode = FamilyMode::constant_curve;
      } else if (line.value == "product") {
        f.mode = FamilyMode::product;
      } else if (line.value == "fibration") {
        f.mode = FamilyMode::fibration;
      } else {
        throw ParseError("family mode must be constant-curve, product or fibration", line.number,
                         1);
      }
      return;
    }
    if (line.key == "max_singularities") {
      f.max_singularities = static_cast<int>(parse_int(line.value, line.number));
      return;
    }
    if (line.key == "fiber") {
      f.fibers.push_back(parse_fiber(line));
      return;
    }
    if (line.key == "parabolic_weights") {
      auto& p = f.parabolic ? *f.parabolic : f.parabolic.emplace();
      p.weights.clear();
      for (const auto& tok : split_tokens(line.value)) {
        p.weights.push_back(parse_rational_at(tok, line.number));
      }
      return;
    }
    if (line.key == "parabolic_mults") {
      auto& p = f.parabolic ? *f.parabolic : f.parabolic.emplace();
      p.multiplicities.clear();
      for (const auto& tok : split_tokens(line.value)) {
        p.multiplicities.push_back(parse_int(tok, line.number));
      }
      return;
    }
    throw ParseError("unknown [family] key '" + line.key + "'", line.number, 1);
  }

  template <typename T>
  static T& ensure(std::optional<T>& opt) {
    if (!opt) opt.emplace();
    return *opt;
  }

  Scenario scenario_;
  MetricSpec* metric_entries_ptr_ = nullptr;
  std::map<std::pair<int, int>, Line> entry_lines_;
};

}  // namespace

std::vector<Convention> conventions_from_string(std::string_view value) {
  if (value == "paper") return {Convention::paper};
  if (value == "chernweil") return {Convention::chernweil};
  if (value == "both") return {Convention::paper, Convention::chernweil};
  throw ValidationError("convention must be paper, chernweil or both; got '" + std::string(value) +
                        "'");
}

Scenario parse_scenario(std::string_view text, const std::string& name) {
  ScenarioBuilder builder(name);
  std::string section;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++number;

    // comments start with '#' outside quotes
    std::string cleaned;
    bool in_quotes = false;
    for (char c : raw) {
      if (c == '"') in_quotes = !in_quotes;
      if (c == '#' && !in_quotes) break;
      cleaned += c;
    }
    std::string_view body = trim(cleaned);
    if (body.empty()) continue;

    if (body.front() == '[') {
      if (body.back() != ']') throw ParseError("unterminated section header", number, 1);
      section = std::string(trim(body.substr(1, body.size() - 2)));
      if (section.empty()) throw ParseError("empty section name", number, 1);
      continue;
    }

    auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected key = value", number, 1);
    }
    Line line;
    line.number = number;
    line.key = std::string(trim(body.substr(0, eq)));
    std::string_view value = trim(body.substr(eq + 1));
    // body and value are views into `cleaned`, so columns are pointer offsets
    if (value.empty()) {
      line.value_column = static_cast<int>(body.data() - cleaned.data() + eq) + 2;
    } else {
      line.value_column = static_cast<int>(value.data() - cleaned.data()) + 1;
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      line.quoted = true;
      value = value.substr(1, value.size() - 2);
      ++line.value_column;
    }
    line.value = std::string(value);
    if (line.key.empty()) throw ParseError("empty key", number, 1);
    if (section.empty()) throw ParseError("key outside any [section]", number, 1);
    builder.add(section, line);
  }
  return builder.finish();
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.stem().string());
}

}  // namespace chernform
