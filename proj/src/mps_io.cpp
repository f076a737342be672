#include "fpump/mps_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <cstdlib>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <fmt/format.h>
#include <zlib.h>

namespace fpump {

namespace {

constexpr double kMpsInfinity = 1e20;  // bound magnitudes at or above read as infinite

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw ParseError(fmt::format("MPS parse error at line {}: {}", line_no, msg));
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

double parse_number(const std::string& tok, std::size_t line_no) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + tok.size()) fail(line_no, fmt::format("malformed numeric field '{}'", tok));
  return v;
}

bool looks_numeric(const std::string& tok) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  (void)std::strtod(begin, &end);
  return end == begin + tok.size() && !tok.empty();
}

double bound_value(double v) {
  if (v >= kMpsInfinity) return kInfinity;
  if (v <= -kMpsInfinity) return -kInfinity;
  return v;
}

enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Ranges, Bounds, End };

struct RowRecord {
  RowSense sense;
  double rhs = 0.0;
  std::optional<double> range;
  std::vector<std::pair<std::size_t, double>> entries;  // (column, coefficient)
};

struct ColRecord {
  bool integer = false;
  bool any_bound_record = false;
  bool lower_set = false;
  double lower = 0.0;
  double upper = kInfinity;
  double objective = 0.0;
};

}  // namespace

MipInstance parse_mps(std::istream& in, const std::string& name_hint) {
  std::string instance_name = name_hint;
  bool maximize = false;

  std::unordered_map<std::string, std::size_t> row_index;  // constraint rows
  std::vector<RowRecord> rows;
  std::string objective_row_name;
  bool have_objective_row = false;
  double objective_offset_rhs = 0.0;

  std::unordered_map<std::string, std::size_t> col_index;
  std::vector<ColRecord> cols;
  std::vector<std::string> col_names;

  bool in_integer_span = false;
  Section section = Section::None;
  bool pending_objsense_value = false;

  std::string line;
  std::size_t line_no = 0;

  auto get_col = [&](const std::string& name) -> std::size_t {
    auto it = col_index.find(name);
    if (it != col_index.end()) return it->second;
    const std::size_t idx = cols.size();
    col_index.emplace(name, idx);
    cols.emplace_back();
    col_names.push_back(name);
    return idx;
  };

  auto apply_rhs_pair = [&](const std::string& row, double value, std::size_t ln) {
    if (row == objective_row_name) {
      objective_offset_rhs = value;
      return;
    }
    auto it = row_index.find(row);
    if (it == row_index.end()) fail(ln, fmt::format("RHS references undeclared row '{}'", row));
    rows[it->second].rhs = value;
  };

  auto apply_range_pair = [&](const std::string& row, double value, std::size_t ln) {
    auto it = row_index.find(row);
    if (it == row_index.end()) fail(ln, fmt::format("RANGES references undeclared row '{}'", row));
    rows[it->second].range = value;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '*') continue;  // comment

    const bool header = !std::isspace(static_cast<unsigned char>(line[0]));
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (header) {
      const std::string key = upper(tokens[0]);
      pending_objsense_value = false;
      if (key == "NAME") {
        section = Section::Name;
        if (tokens.size() > 1) instance_name = tokens[1];
      } else if (key == "OBJSENSE") {
        section = Section::ObjSense;
        if (tokens.size() > 1) {
          const std::string v = upper(tokens[1]);
          maximize = v == "MAX" || v == "MAXIMIZE";
        } else {
          pending_objsense_value = true;
        }
      } else if (key == "ROWS") {
        section = Section::Rows;
      } else if (key == "COLUMNS") {
        section = Section::Columns;
      } else if (key == "RHS") {
        section = Section::Rhs;
      } else if (key == "RANGES") {
        section = Section::Ranges;
      } else if (key == "BOUNDS") {
        section = Section::Bounds;
      } else if (key == "ENDATA") {
        section = Section::End;
        break;
      } else {
        fail(line_no, fmt::format("unknown section '{}'", tokens[0]));
      }
      continue;
    }

    switch (section) {
      case Section::ObjSense: {
        if (pending_objsense_value) {
          const std::string v = upper(tokens[0]);
          maximize = v == "MAX" || v == "MAXIMIZE";
          pending_objsense_value = false;
        }
        break;
      }
      case Section::Rows: {
        if (tokens.size() < 2) fail(line_no, "ROWS record needs a type and a name");
        const std::string type = upper(tokens[0]);
        const std::string& name = tokens[1];
        if (type == "N") {
          if (have_objective_row) {
            fail(line_no, "duplicate objective (N) row; exactly one is required");
          }
          have_objective_row = true;
          objective_row_name = name;
        } else {
          RowSense sense;
          if (type == "L") sense = RowSense::LessEqual;
          else if (type == "G") sense = RowSense::GreaterEqual;
          else if (type == "E") sense = RowSense::Equal;
          else fail(line_no, fmt::format("unknown row type '{}'", tokens[0]));
          if (row_index.count(name) || name == objective_row_name) {
            fail(line_no, fmt::format("duplicate row '{}'", name));
          }
          row_index.emplace(name, rows.size());
          rows.push_back(RowRecord{sense, 0.0, std::nullopt, {}});
        }
        break;
      }
      case Section::Columns: {
        // A marker line toggles the integrality span for subsequent columns.
        bool is_marker = false;
        for (std::size_t t = 1; t < tokens.size(); ++t) {
          if (upper(tokens[t]) == "'MARKER'") is_marker = true;
        }
        if (is_marker) {
          bool org = false, end = false;
          for (const auto& t : tokens) {
            const std::string u = upper(t);
            if (u == "'INTORG'") org = true;
            if (u == "'INTEND'") end = true;
          }
          if (org == end) fail(line_no, "marker line must name INTORG or INTEND");
          if (org && in_integer_span) fail(line_no, "INTORG while a marker span is already open");
          if (end && !in_integer_span) fail(line_no, "INTEND without a matching INTORG");
          in_integer_span = org;
          break;
        }
        if (tokens.size() < 3 || tokens.size() % 2 == 0) {
          fail(line_no, "COLUMNS record needs a column name and (row, value) pairs");
        }
        const std::size_t ci = get_col(tokens[0]);
        if (in_integer_span) cols[ci].integer = true;
        for (std::size_t t = 1; t + 1 < tokens.size(); t += 2) {
          const std::string& row = tokens[t];
          const double value = parse_number(tokens[t + 1], line_no);
          if (have_objective_row && row == objective_row_name) {
            cols[ci].objective += value;
          } else {
            auto it = row_index.find(row);
            if (it == row_index.end()) {
              fail(line_no, fmt::format("COLUMNS references undeclared row '{}'", row));
            }
            rows[it->second].entries.emplace_back(ci, value);
          }
        }
        break;
      }
      case Section::Rhs:
      case Section::Ranges: {
        // Leading set name is optional; pairs make the count even without it.
        std::size_t first = tokens.size() % 2 == 0 ? 0 : 1;
        if (tokens.size() - first < 2) fail(line_no, "record needs (row, value) pairs");
        for (std::size_t t = first; t + 1 < tokens.size(); t += 2) {
          const double value = parse_number(tokens[t + 1], line_no);
          if (section == Section::Rhs) apply_rhs_pair(tokens[t], value, line_no);
          else apply_range_pair(tokens[t], value, line_no);
        }
        break;
      }
      case Section::Bounds: {
        const std::string type = upper(tokens[0]);
        const bool takes_value = type == "UP" || type == "LO" || type == "FX" ||
                                 type == "UI" || type == "LI";
        const bool no_value = type == "BV" || type == "MI" || type == "PL" || type == "FR";
        if (!takes_value && !no_value) fail(line_no, fmt::format("unknown bound type '{}'", tokens[0]));

        std::string col_name;
        double value = 0.0;
        if (takes_value) {
          if (tokens.size() == 4) {
            col_name = tokens[2];
            value = parse_number(tokens[3], line_no);
          } else if (tokens.size() == 3) {
            col_name = tokens[1];
            value = parse_number(tokens[2], line_no);
          } else {
            fail(line_no, "bound record needs [set] column value");
          }
        } else {
          if (tokens.size() == 2) {
            col_name = tokens[1];
          } else if (tokens.size() >= 3) {
            // Either "TYPE set column" or "TYPE column ignored-value".
            if (col_index.count(tokens[1]) && looks_numeric(tokens[2])) col_name = tokens[1];
            else col_name = tokens[2];
          } else {
            fail(line_no, "bound record needs a column name");
          }
        }
        auto it = col_index.find(col_name);
        if (it == col_index.end()) {
          fail(line_no, fmt::format("BOUNDS references unknown column '{}'", col_name));
        }
        ColRecord& c = cols[it->second];
        c.any_bound_record = true;
        const double v = bound_value(value);
        if (type == "UP") {
          c.upper = v;
          if (v < 0 && !c.lower_set && c.lower == 0.0) c.lower = -kInfinity;
        } else if (type == "LO") {
          c.lower = v;
          c.lower_set = true;
        } else if (type == "FX") {
          c.lower = c.upper = v;
          c.lower_set = true;
        } else if (type == "BV") {
          c.lower = 0.0;
          c.upper = 1.0;
          c.lower_set = true;
          c.integer = true;
        } else if (type == "MI") {
          c.lower = -kInfinity;
          c.lower_set = true;
        } else if (type == "PL") {
          c.upper = kInfinity;
        } else if (type == "FR") {
          c.lower = -kInfinity;
          c.upper = kInfinity;
          c.lower_set = true;
        } else if (type == "UI") {
          c.upper = v;
          c.integer = true;
        } else if (type == "LI") {
          c.lower = v;
          c.lower_set = true;
          c.integer = true;
        }
        break;
      }
      case Section::Name:
      case Section::None:
        fail(line_no, "data record before any section header");
      case Section::End:
        break;
    }
  }

  if (in_integer_span) fail(line_no, "INTORG span left open at end of input");
  if (!have_objective_row) fail(line_no, "no objective (N) row declared");

  MipInstance inst;
  inst.name = instance_name;
  inst.num_vars = cols.size();

  inst.objective.resize(cols.size());
  inst.lower.resize(cols.size());
  inst.upper.resize(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    ColRecord& c = cols[i];
    if (c.integer && !c.any_bound_record) c.upper = 1.0;  // classical marker default
    inst.objective[i] = maximize ? -c.objective : c.objective;
    inst.lower[i] = c.lower;
    inst.upper[i] = c.upper;
    if (c.integer) inst.integer_set.push_back(i);
  }
  // RHS on the objective row stores the negated constant.
  inst.objective_offset = maximize ? objective_offset_rhs : -objective_offset_rhs;

  // Emit rows in declaration order; a ranged row gains a companion row with
  // the opposite sense appended after all declared rows.
  struct Companion {
    RowSense sense;
    double rhs;
    std::size_t source;
  };
  std::vector<Companion> companions;
  inst.row_start.push_back(0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    RowRecord& row = rows[r];
    double primary_rhs = row.rhs;
    if (row.range) {
      const double rng = *row.range;
      double lo, hi;
      switch (row.sense) {
        case RowSense::LessEqual:
          hi = row.rhs;
          lo = row.rhs - std::fabs(rng);
          break;
        case RowSense::GreaterEqual:
          lo = row.rhs;
          hi = row.rhs + std::fabs(rng);
          break;
        case RowSense::Equal:
        default:
          if (rng >= 0) {
            lo = row.rhs;
            hi = row.rhs + rng;
          } else {
            lo = row.rhs + rng;
            hi = row.rhs;
          }
          break;
      }
      if (row.sense == RowSense::GreaterEqual) {
        primary_rhs = lo;
        companions.push_back({RowSense::LessEqual, hi, r});
      } else {
        row.sense = RowSense::LessEqual;
        primary_rhs = hi;
        companions.push_back({RowSense::GreaterEqual, lo, r});
      }
    }
    std::sort(row.entries.begin(), row.entries.end());
    for (const auto& [c, v] : row.entries) {
      inst.col_index.push_back(c);
      inst.coef.push_back(v);
    }
    inst.row_start.push_back(inst.col_index.size());
    inst.row_sense.push_back(row.sense);
    inst.rhs.push_back(primary_rhs);
  }
  for (const auto& comp : companions) {
    for (const auto& [c, v] : rows[comp.source].entries) {
      inst.col_index.push_back(c);
      inst.coef.push_back(v);
    }
    inst.row_start.push_back(inst.col_index.size());
    inst.row_sense.push_back(comp.sense);
    inst.rhs.push_back(comp.rhs);
  }
  inst.num_rows = inst.row_sense.size();

  inst.finalize();
  return inst;
}

MipInstance parse_mps_string(const std::string& text, const std::string& name_hint) {
  std::istringstream in(text);
  return parse_mps(in, name_hint);
}

MipInstance load_instance(const std::string& path) {
  // gzread handles both plain and gzip-compressed files.
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  std::string text;
  char buf[1 << 16];
  int n;
  while ((n = gzread(f, buf, sizeof buf)) > 0) text.append(buf, static_cast<std::size_t>(n));
  const bool read_error = n < 0;
  gzclose(f);
  if (read_error) throw std::runtime_error(fmt::format("error reading '{}'", path));

  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) {
    stem = stem.substr(slash + 1);
  }
  for (const char* suffix : {".gz", ".mps", ".MPS"}) {
    if (stem.size() > std::strlen(suffix) && stem.ends_with(suffix)) {
      stem = stem.substr(0, stem.size() - std::strlen(suffix));
    }
  }
  return parse_mps_string(text, stem);
}

namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
  return std::string(buf, res.ptr);
}

std::string row_name(std::size_t r) { return fmt::format("R{:07}", r); }
std::string col_name(std::size_t c) { return fmt::format("C{:07}", c); }

}  // namespace

std::string dump_canonical(const MipInstance& inst) {
  std::string out;
  out += fmt::format("NAME {}\n", inst.name.empty() ? "unnamed" : inst.name);
  out += "ROWS\n N  OBJ\n";
  for (std::size_t r = 0; r < inst.num_rows; ++r) {
    out += fmt::format(" {}  {}\n", static_cast<char>(inst.row_sense[r]), row_name(r));
  }

  // Column-major view of the row system.
  std::vector<std::vector<std::pair<std::size_t, double>>> by_col(inst.num_vars);
  for (std::size_t r = 0; r < inst.num_rows; ++r) {
    for (std::size_t k = inst.row_start[r]; k < inst.row_start[r + 1]; ++k) {
      by_col[inst.col_index[k]].emplace_back(r, inst.coef[k]);
    }
  }

  out += "COLUMNS\n";
  bool in_span = false;
  std::size_t marker = 0;
  for (std::size_t c = 0; c < inst.num_vars; ++c) {
    const bool integral = inst.is_integer_var(c);
    if (integral && !in_span) {
      out += fmt::format("    M{:07}  'MARKER'  'INTORG'\n", marker++);
      in_span = true;
    } else if (!integral && in_span) {
      out += fmt::format("    M{:07}  'MARKER'  'INTEND'\n", marker++);
      in_span = false;
    }
    bool wrote = false;
    if (inst.objective[c] != 0.0) {
      out += fmt::format("    {}  OBJ  {}\n", col_name(c), format_number(inst.objective[c]));
      wrote = true;
    }
    for (const auto& [r, v] : by_col[c]) {
      out += fmt::format("    {}  {}  {}\n", col_name(c), row_name(r), format_number(v));
      wrote = true;
    }
    if (!wrote) {
      // Keep empty columns alive across the round trip.
      out += fmt::format("    {}  OBJ  0\n", col_name(c));
    }
  }
  if (in_span) out += fmt::format("    M{:07}  'MARKER'  'INTEND'\n", marker++);

  out += "RHS\n";
  if (inst.objective_offset != 0.0) {
    out += fmt::format("    RHS  OBJ  {}\n", format_number(-inst.objective_offset));
  }
  for (std::size_t r = 0; r < inst.num_rows; ++r) {
    if (inst.rhs[r] != 0.0) {
      out += fmt::format("    RHS  {}  {}\n", row_name(r), format_number(inst.rhs[r]));
    }
  }

  out += "BOUNDS\n";
  for (std::size_t c = 0; c < inst.num_vars; ++c) {
    const double lo = inst.lower[c];
    const double hi = inst.upper[c];
    const std::string name = col_name(c);
    if (inst.is_integer_var(c)) {
      if (lo == 0.0 && hi == 1.0) continue;  // marker default
      if (lo == hi) {
        out += fmt::format(" FX BND  {}  {}\n", name, format_number(lo));
        continue;
      }
      if (lo != 0.0) out += fmt::format(" LO BND  {}  {}\n", name, format_number(lo));
      out += fmt::format(" UP BND  {}  {}\n", name, format_number(hi));
    } else {
      if (lo == 0.0 && hi == kInfinity) continue;  // continuous default
      if (lo == hi) {
        out += fmt::format(" FX BND  {}  {}\n", name, format_number(lo));
        continue;
      }
      if (lo == -kInfinity) out += fmt::format(" MI BND  {}\n", name);
      else if (lo != 0.0) out += fmt::format(" LO BND  {}  {}\n", name, format_number(lo));
      if (hi != kInfinity) out += fmt::format(" UP BND  {}  {}\n", name, format_number(hi));
      else if (lo == -kInfinity) out += fmt::format(" PL BND  {}\n", name);
    }
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace fpump
