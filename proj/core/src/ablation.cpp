#include "maup/ablation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "maup/errors.hpp"
#include "maup/evaluation.hpp"
#include "maup/parallel.hpp"
#include "maup/pipeline.hpp"

namespace maup {
namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string_view unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return trim(s);
}

std::vector<std::string> split_list(std::string_view value) {
  value = trim(value);
  if (!value.empty() && value.front() == '[' && value.back() == ']') {
    value = value.substr(1, value.size() - 2);
  }
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto item = unquote(value.substr(start, comma == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : comma - start));
    if (!item.empty()) items.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = unquote(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid value '" + std::string(text) + "' for key '" + std::string(key) + "'");
  }
  return value;
}

// from_chars for double is missing from some standard libraries; strtod is enough here.
template <>
double parse_number<double>(std::string_view key, std::string_view text) {
  const std::string s(unquote(text));
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("invalid value '" + s + "' for key '" + std::string(key) + "'");
  }
  return v;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

ToggleRow parse_toggles(std::string_view text) {
  ToggleRow t{false, false, false};
  std::size_t start = 0;
  text = unquote(text);
  while (start <= text.size()) {
    const auto plus = text.find('+', start);
    const auto part = trim(text.substr(start, plus == std::string_view::npos ? std::string_view::npos
                                                                            : plus - start));
    if (part == "mmp") {
      t.mmp = true;
    } else if (part == "ump") {
      t.ump = true;
    } else if (part == "np") {
      t.np = true;
    } else {
      throw ConfigError("unknown prompting path '" + std::string(part) + "' in toggles");
    }
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return t;
}

SweepConfig parse_sweep_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = line;
    if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(l.substr(0, eq)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    kv[key] = std::string(trim(l.substr(eq + 1)));
  }

  SweepConfig cfg;
  std::vector<ShapeFamily> families{ShapeFamily::disk};
  std::optional<int> size;
  std::optional<int> channels;
  std::optional<double> contrast;
  std::optional<double> noise;
  int seed_count = 1;
  std::uint64_t seed_start = 0;
  cfg.toggles = {ToggleRow{}};

  for (const auto& [key, value] : kv) {
    if (key == "families") {
      families.clear();
      for (const auto& f : split_list(value)) families.push_back(parse_family(f));
    } else if (key == "toggles") {
      cfg.toggles.clear();
      for (const auto& t : split_list(value)) cfg.toggles.push_back(parse_toggles(t));
    } else if (key == "nf") {
      for (const auto& v : split_list(value)) cfg.n_f_values.push_back(parse_number<int>(key, v));
    } else if (key == "seeds") {
      seed_count = parse_number<int>(key, value);
    } else if (key == "seed_start") {
      seed_start = parse_number<std::uint64_t>(key, value);
    } else if (key == "size") {
      size = parse_number<int>(key, value);
    } else if (key == "channels") {
      channels = parse_number<int>(key, value);
    } else if (key == "contrast") {
      contrast = parse_number<double>(key, value);
    } else if (key == "noise") {
      noise = parse_number<double>(key, value);
    } else if (key == "threshold") {
      cfg.segment_threshold = parse_number<double>(key, value);
    } else if (key == "threads") {
      cfg.threads = parse_number<int>(key, value);
    } else if (key == "gamma") {
      cfg.base.gamma = parse_number<double>(key, value);
    } else if (key == "nmin") {
      cfg.base.n_min = parse_number<int>(key, value);
    } else if (key == "nmax") {
      cfg.base.n_max = parse_number<int>(key, value);
    } else if (key == "nneg") {
      cfg.base.n_neg = parse_number<int>(key, value);
    } else if (key == "radius") {
      cfg.base.radius = parse_number<int>(key, value);
    } else if (key == "pct") {
      cfg.base.percentile = parse_number<double>(key, value);
    } else if (key == "scale") {
      cfg.base.scale = parse_number<int>(key, value);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  if (families.empty()) throw ConfigError("families must not be empty");
  if (cfg.toggles.empty()) throw ConfigError("toggles must not be empty");
  if (seed_count < 1) throw ConfigError("seeds must be >= 1");
  if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
  for (int nf : cfg.n_f_values)
    if (nf < 1) throw ConfigError("nf values must be >= 1");

  for (ShapeFamily f : families) {
    PhantomSpec s = phantom_preset(f, 0);
    if (size) s.size = *size;
    if (channels) s.channels = *channels;
    if (contrast) s.contrast = *contrast;
    if (noise) s.noise = *noise;
    cfg.families.push_back(s);
  }
  for (int i = 0; i < seed_count; ++i) cfg.seeds.push_back(seed_start + static_cast<std::uint64_t>(i));

  PromptConfig probe = cfg.base;  // toggles are validated per row
  probe.mmp = true;
  probe.validate();
  return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_config(ss.str());
}

std::vector<AblationRow> ablation_run(const SweepConfig& cfg) {
  if (cfg.families.empty() || cfg.toggles.empty()) {
    throw ConfigError("ablation needs at least one family and one toggle row");
  }
  const std::vector<int> nfs = cfg.n_f_values.empty() ? std::vector<int>{cfg.base.n_f}
                                                      : cfg.n_f_values;
  std::vector<AblationRow> rows;
  std::vector<PhantomSpec> specs;
  for (const auto& fam : cfg.families)
    for (const auto& t : cfg.toggles)
      for (int nf : nfs)
        for (std::uint64_t seed : cfg.seeds) {
          PhantomSpec s = fam;
          s.seed = seed;
          specs.push_back(s);
          rows.push_back({std::string(to_string(fam.family)), t, nf, seed, 0.0, false, {}});
        }

  parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
    AblationRow& row = rows[i];
    try {
      const Phantom ph = generate_phantom(specs[i]);
      PromptConfig pc = cfg.base;
      pc.mmp = row.toggles.mmp;
      pc.ump = row.toggles.ump;
      pc.np = row.toggles.np;
      pc.n_f = row.n_f;
      pc.seed = row.seed;
      pc.threads = 1;
      const EpisodeResult r = run_episode(
          EpisodeInputs{ph.support.features, ph.support.mask, ph.query.features}, pc);
      const BitMask pred = surrogate_segment(r.prompts, ph.query.image, cfg.segment_threshold);
      row.dice = dice(pred, ph.query.mask);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
  });

  std::sort(rows.begin(), rows.end(), [](const AblationRow& a, const AblationRow& b) {
    return std::tie(a.family, a.toggles, a.n_f, a.seed) <
           std::tie(b.family, b.toggles, b.n_f, b.seed);
  });
  return rows;
}

std::string format_csv(const std::vector<AblationRow>& rows) {
  std::string out = "family,mmp,ump,np,N_f,seed,dice,status\n";
  for (const auto& r : rows) {
    out += r.family;
    out += r.toggles.mmp ? ",1" : ",0";
    out += r.toggles.ump ? ",1" : ",0";
    out += r.toggles.np ? ",1" : ",0";
    out += "," + std::to_string(r.n_f) + "," + std::to_string(r.seed) + ",";
    out += r.failed ? "nan" : format_double(r.dice, "%.6f");
    out += "," + (r.failed ? csv_quote("failed: " + r.error) : std::string("ok"));
    out += "\n";
  }
  return out;
}

std::string summary_table(const std::vector<AblationRow>& rows) {
  struct Acc {
    double sum = 0.0;
    int ok = 0;
    int failed = 0;
  };
  std::map<std::tuple<std::string, ToggleRow, int>, Acc> groups;
  for (const auto& r : rows) {
    auto& a = groups[{r.family, r.toggles, r.n_f}];
    if (r.failed) {
      ++a.failed;
    } else {
      a.sum += r.dice;
      ++a.ok;
    }
  }
  std::ostringstream out;
  out << "family      UMP MMP NP   N_f   runs  failed  mean_dice\n";
  for (const auto& [key, a] : groups) {
    const auto& [family, t, nf] = key;
    char line[160];
    std::snprintf(line, sizeof line, "%-10s  %-3s %-3s %-3s %4d  %5d  %6d  %s\n", family.c_str(),
                  t.ump ? "x" : "-", t.mmp ? "x" : "-", t.np ? "x" : "-", nf, a.ok + a.failed,
                  a.failed, a.ok > 0 ? format_double(a.sum / a.ok, "%.4f").c_str() : "n/a");
    out << line;
  }
  return out.str();
}

}  // namespace maup
