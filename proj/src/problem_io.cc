// Copyright 2026 The imlp Authors
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

#include "imlp/problem_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "imlp/error.hpp"
#include "json.hpp"

namespace imlp {
namespace {

using nlohmann::json;

// Converts a byte offset into 1-based (line, column).
std::pair<int, int> LineColumn(std::string_view text, std::size_t offset) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending character.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = LineColumn(text, at);
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) {
      msg = msg.substr(pos);
    }
    throw ParseError(msg, line, column);
  }
}

[[noreturn]] void FieldError(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what, 0, 0);
}

double BoundValue(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "Infinity" || s == "+Infinity") {
      return kInfinity;
    }
    if (s == "-inf" || s == "-Infinity") return -kInfinity;
  }
  FieldError(path, "expected a number or one of \"inf\", \"-inf\"");
}

double Number(const json& v, const std::string& path) {
  if (!v.is_number()) FieldError(path, "expected a number");
  return v.get<double>();
}

Vector NumberArray(const json& v, const std::string& path) {
  if (!v.is_array()) FieldError(path, "expected an array of numbers");
  Vector out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(Number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Bounds may be an array or a single broadcast value.
Vector BoundArray(const json& v, std::size_t n, const std::string& path) {
  if (!v.is_array()) return Vector(n, BoundValue(v, path));
  Vector out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(BoundValue(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::size_t Count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    FieldError(path, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

DenseMatrix MatrixField(const json& m, std::size_t n, const std::string& path) {
  if (!m.is_object()) FieldError(path, "expected an object");
  if (m.contains("dense")) {
    const json& d = m["dense"];
    if (!d.is_array()) FieldError(path + ".dense", "expected array of rows");
    const std::size_t rows = d.size();
    std::size_t cols = rows > 0 && d[0].is_array() ? d[0].size() : n;
    if (m.contains("cols")) cols = Count(m["cols"], path + ".cols");
    if (m.contains("rows") && Count(m["rows"], path + ".rows") != rows) {
      throw DimensionError(path + ": 'rows' does not match the dense data");
    }
    DenseMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const auto r =
          NumberArray(d[i], path + ".dense[" + std::to_string(i) + "]");
      if (r.size() != cols) {
        throw DimensionError(path + ": row " + std::to_string(i) + " has " +
                             std::to_string(r.size()) + " entries, expected " +
                             std::to_string(cols));
      }
      std::copy(r.begin(), r.end(), out.row(i).begin());
    }
    return out;
  }
  if (m.contains("coo")) {
    if (!m.contains("rows")) FieldError(path + ".rows", "required with coo");
    const std::size_t rows = Count(m["rows"], path + ".rows");
    const std::size_t cols =
        m.contains("cols") ? Count(m["cols"], path + ".cols") : n;
    DenseMatrix out(rows, cols);
    const json& entries = m["coo"];
    if (!entries.is_array()) FieldError(path + ".coo", "expected an array");
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const std::string p = path + ".coo[" + std::to_string(k) + "]";
      const json& e = entries[k];
      if (!e.is_array() || e.size() != 3) FieldError(p, "expected [i, j, v]");
      const std::size_t i = Count(e[0], p + "[0]");
      const std::size_t j = Count(e[1], p + "[1]");
      if (i >= rows || j >= cols) {
        throw DimensionError(p + ": index out of range");
      }
      out(i, j) += Number(e[2], p + "[2]");
    }
    return out;
  }
  FieldError(path, "expected a 'dense' or 'coo' member");
}

void ConstraintBlock(const json& doc, const char* key, std::size_t n,
                     DenseMatrix& matrix, Vector& rhs) {
  matrix = DenseMatrix(0, n);
  rhs.clear();
  if (!doc.contains(key)) return;
  const json& block = doc[key];
  const std::string path = key;
  if (!block.is_object()) FieldError(path, "expected an object");
  if (!block.contains("matrix")) FieldError(path + ".matrix", "missing");
  if (!block.contains("rhs")) FieldError(path + ".rhs", "missing");
  matrix = MatrixField(block["matrix"], n, path + ".matrix");
  rhs = NumberArray(block["rhs"], path + ".rhs");
}

json BoundJson(double v) {
  if (v == kInfinity) return "inf";
  if (v == -kInfinity) return "-inf";
  return v;
}

json NumberJson(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double NumberFromJson(const json& v, const std::string& path) {
  if (v.is_null()) return std::nan("");
  if (v.is_string()) return BoundValue(v, path);
  return Number(v, path);
}

// ---------------------------------------------------------------------------
// MPS

struct MpsToken {
  std::string text;
  int column;  // 1-based
};

std::vector<MpsToken> SplitFree(std::string_view line) {
  std::vector<MpsToken> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() &&
           std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)),
                   static_cast<int>(start) + 1});
  }
  return out;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Fixed-format fields: 2-3, 5-12, 15-22, 25-36, 40-47, 50-61.
std::vector<MpsToken> SplitFixed(std::string_view line) {
  static constexpr std::pair<int, int> kFields[] = {
      {2, 3}, {5, 12}, {15, 22}, {25, 36}, {40, 47}, {50, 61}};
  std::vector<MpsToken> out;
  for (const auto& [from, to] : kFields) {
    if (static_cast<int>(line.size()) < from) break;
    const auto len = static_cast<std::size_t>(
        std::min<int>(to, static_cast<int>(line.size())) - from + 1);
    std::string field = Trim(line.substr(from - 1, len));
    if (!field.empty()) out.push_back({field, from});
  }
  return out;
}

bool LooksNumeric(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = first + s.size();
  if (!s.empty() && s[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  return ec == std::errc() && ptr == last;
}

enum class RowType { kObjective, kFree, kLess, kGreater, kEqual };

struct MpsRow {
  std::string name;
  RowType type;
  double rhs = 0.0;
  std::optional<double> range;
  std::vector<std::pair<std::size_t, double>> entries;
};

class MpsReader {
 public:
  explicit MpsReader(std::string_view text) : text_(text) {}

  LpProblem Read();

 private:
  [[noreturn]] void Fail(const std::string& what, int column = 1) const {
    throw ParseError(what, line_no_, column);
  }

  double ParseNumber(const MpsToken& t) const {
    double v = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (!t.text.empty() && t.text[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      Fail("expected a number, got '" + t.text + "'", t.column);
    }
    return v;
  }

  // Tokenizes a data line, falling back to fixed columns when the free
  // split does not produce a plausible field count.
  std::vector<MpsToken> Tokens(
      std::string_view line,
      bool (*plausible)(const std::vector<MpsToken>&)) const {
    auto free = SplitFree(line);
    if (plausible(free)) return free;
    auto fixed = SplitFixed(line);
    if (plausible(fixed)) return fixed;
    return free;
  }

  std::size_t RowIndex(const MpsToken& t) const {
    auto it = row_index_.find(t.text);
    if (it == row_index_.end()) Fail("unknown row '" + t.text + "'", t.column);
    return it->second;
  }

  void RowsLine(std::string_view line);
  void ColumnsLine(std::string_view line);
  void RhsLine(std::string_view line, bool ranges);
  void BoundsLine(std::string_view line);
  LpProblem Assemble() const;

  std::string_view text_;
  int line_no_ = 0;
  std::string name_;
  std::vector<MpsRow> rows_;
  std::unordered_map<std::string, std::size_t> row_index_;
  std::optional<std::size_t> objective_row_;
  std::vector<std::string> columns_;
  std::unordered_map<std::string, std::size_t> column_index_;
  Vector lower_;
  Vector upper_;
  double objective_constant_ = 0.0;
};

void MpsReader::RowsLine(std::string_view line) {
  const auto t = Tokens(
      line, [](const std::vector<MpsToken>& v) { return v.size() == 2; });
  if (t.size() != 2) Fail("ROWS line needs a type and a name");
  RowType type;
  const std::string& code = t[0].text;
  if (code == "N" || code == "n") {
    type = objective_row_ ? RowType::kFree : RowType::kObjective;
  } else if (code == "L" || code == "l") {
    type = RowType::kLess;
  } else if (code == "G" || code == "g") {
    type = RowType::kGreater;
  } else if (code == "E" || code == "e") {
    type = RowType::kEqual;
  } else {
    Fail("unknown row type '" + code + "'", t[0].column);
  }
  if (row_index_.count(t[1].text)) {
    Fail("duplicate row '" + t[1].text + "'", t[1].column);
  }
  row_index_[t[1].text] = rows_.size();
  if (type == RowType::kObjective) objective_row_ = rows_.size();
  rows_.push_back({t[1].text, type, 0.0, std::nullopt, {}});
}

void MpsReader::ColumnsLine(std::string_view line) {
  const auto t = Tokens(line, [](const std::vector<MpsToken>& v) {
    if (v.size() == 3 && v[1].text == "'MARKER'") return true;
    return (v.size() == 3 || v.size() == 5) && LooksNumeric(v[2].text) &&
           (v.size() == 3 || LooksNumeric(v[4].text));
  });
  if (t.size() >= 2 && t[1].text == "'MARKER'") return;  // integrality marker
  if (t.size() != 3 && t.size() != 5) {
    Fail("COLUMNS line needs a column and one or two (row, value) pairs");
  }
  std::size_t col;
  if (auto it = column_index_.find(t[0].text); it != column_index_.end()) {
    col = it->second;
    if (col + 1 != columns_.size()) {
      Fail("column '" + t[0].text + "' is not contiguous", t[0].column);
    }
  } else {
    col = columns_.size();
    column_index_[t[0].text] = col;
    columns_.push_back(t[0].text);
    lower_.push_back(0.0);
    upper_.push_back(kInfinity);
  }
  for (std::size_t k = 1; k + 1 < t.size(); k += 2) {
    const std::size_t r = RowIndex(t[k]);
    rows_[r].entries.emplace_back(col, ParseNumber(t[k + 1]));
  }
}

void MpsReader::RhsLine(std::string_view line, bool ranges) {
  const auto t = Tokens(line, [](const std::vector<MpsToken>& v) {
    if (v.size() < 2 || v.size() > 5) return false;
    if (!LooksNumeric(v.back().text)) return false;
    return v.size() < 4 || LooksNumeric(v[v.size() - 3].text);
  });
  if (t.size() < 2 || t.size() > 5) Fail("malformed RHS/RANGES line");
  // An odd count means the first token is the vector name.
  const std::size_t first = t.size() % 2 == 1 ? 1 : 0;
  for (std::size_t k = first; k + 1 < t.size(); k += 2) {
    const std::size_t r = RowIndex(t[k]);
    const double v = ParseNumber(t[k + 1]);
    if (ranges) {
      if (rows_[r].type == RowType::kObjective ||
          rows_[r].type == RowType::kFree) {
        Fail("RANGES on a free row", t[k].column);
      }
      rows_[r].range = v;
    } else if (rows_[r].type == RowType::kObjective) {
      objective_constant_ = -v;
    } else {
      rows_[r].rhs = v;
    }
  }
}

void MpsReader::BoundsLine(std::string_view line) {
  auto t = SplitFree(line);
  if (t.size() < 2 || t.size() > 4) {
    auto fixed = SplitFixed(line);
    if (fixed.size() >= 2 && fixed.size() <= 4) t = fixed;
  }
  if (t.size() < 2 || t.size() > 4) Fail("malformed BOUNDS line");
  std::string type = t[0].text;
  std::transform(type.begin(), type.end(), type.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  const bool needs_value = type == "UP" || type == "LO" || type == "FX" ||
                           type == "LI" || type == "UI";
  const bool value_free =
      type == "FR" || type == "MI" || type == "PL" || type == "BV";
  if (!needs_value && !value_free) {
    Fail("unsupported bound type '" + t[0].text + "'", t[0].column);
  }
  // Decide whether a bound-set name is present.
  std::size_t col_tok;
  std::optional<std::size_t> val_tok;
  if (needs_value) {
    if (t.size() == 4) {
      col_tok = 2;
      val_tok = 3;
    } else if (t.size() == 3) {
      col_tok = 1;
      val_tok = 2;
    } else {
      Fail("bound '" + type + "' requires a value");
    }
  } else if (t.size() == 4) {
    col_tok = 2;
    val_tok = 3;
  } else if (t.size() == 3) {
    col_tok = column_index_.count(t[2].text) ? 2 : 1;
    if (col_tok == 1) val_tok = 2;
  } else {
    col_tok = 1;
  }
  auto it = column_index_.find(t[col_tok].text);
  if (it == column_index_.end()) {
    Fail("unknown column '" + t[col_tok].text + "'", t[col_tok].column);
  }
  const std::size_t j = it->second;
  const double v = val_tok ? ParseNumber(t[*val_tok]) : 0.0;
  if (type == "UP" || type == "UI") {
    upper_[j] = v;
    if (v < 0.0 && lower_[j] == 0.0) lower_[j] = -kInfinity;
  } else if (type == "LO" || type == "LI") {
    lower_[j] = v;
  } else if (type == "FX") {
    lower_[j] = v;
    upper_[j] = v;
  } else if (type == "FR") {
    lower_[j] = -kInfinity;
    upper_[j] = kInfinity;
  } else if (type == "MI") {
    lower_[j] = -kInfinity;
  } else if (type == "PL") {
    upper_[j] = kInfinity;
  } else if (type == "BV") {
    lower_[j] = 0.0;
    upper_[j] = 1.0;
  }
}

LpProblem MpsReader::Assemble() const {
  const std::size_t n = columns_.size();
  LpProblem p;
  p.name = name_;
  p.cost.assign(n, 0.0);
  p.objective_offset = objective_constant_;
  p.lower = lower_;
  p.upper = upper_;

  std::vector<Vector> ge_rows;
  Vector ge_rhs;
  std::vector<Vector> eq_rows;
  Vector eq_rhs;
  for (const MpsRow& row : rows_) {
    Vector a(n, 0.0);
    for (const auto& [j, v] : row.entries) a[j] += v;
    if (row.type == RowType::kObjective) {
      p.cost = a;
      continue;
    }
    if (row.type == RowType::kFree) continue;
    auto push_ge = [&](const Vector& coeffs, double rhs, double sign) {
      Vector r(coeffs);
      for (double& x : r) x *= sign;
      ge_rows.push_back(std::move(r));
      ge_rhs.push_back(sign * rhs);
    };
    // Every row becomes lo <= a x <= hi, with equality when lo == hi.
    double lo = -kInfinity;
    double hi = kInfinity;
    switch (row.type) {
      case RowType::kLess:
        hi = row.rhs;
        if (row.range) lo = row.rhs - std::abs(*row.range);
        break;
      case RowType::kGreater:
        lo = row.rhs;
        if (row.range) hi = row.rhs + std::abs(*row.range);
        break;
      case RowType::kEqual:
        lo = hi = row.rhs;
        if (row.range) {
          if (*row.range > 0) hi = row.rhs + *row.range;
          if (*row.range < 0) lo = row.rhs + *row.range;
        }
        break;
      default:
        break;
    }
    if (lo == hi) {
      eq_rows.push_back(a);
      eq_rhs.push_back(lo);
      continue;
    }
    if (std::isfinite(lo)) push_ge(a, lo, 1.0);
    if (std::isfinite(hi)) push_ge(a, hi, -1.0);
  }
  p.ineq_matrix = DenseMatrix(ge_rows.size(), n);
  for (std::size_t i = 0; i < ge_rows.size(); ++i) {
    std::copy(ge_rows[i].begin(), ge_rows[i].end(),
              p.ineq_matrix.row(i).begin());
  }
  p.ineq_rhs = ge_rhs;
  p.eq_matrix = DenseMatrix(eq_rows.size(), n);
  for (std::size_t i = 0; i < eq_rows.size(); ++i) {
    std::copy(eq_rows[i].begin(), eq_rows[i].end(), p.eq_matrix.row(i).begin());
  }
  p.eq_rhs = eq_rhs;
  return p;
}

LpProblem MpsReader::Read() {
  enum class Section {
    kNone,
    kObjSense,
    kRows,
    kColumns,
    kRhs,
    kRanges,
    kBounds,
    kEnd
  };
  Section section = Section::kNone;
  std::size_t pos = 0;
  while (pos <= text_.size() && section != Section::kEnd) {
    std::size_t eol = text_.find('\n', pos);
    if (eol == std::string_view::npos) eol = text_.size();
    std::string_view line = text_.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || line[0] == '*') continue;

    if (!std::isspace(static_cast<unsigned char>(line[0]))) {
      const auto t = SplitFree(line);
      const std::string& head = t[0].text;
      if (head == "NAME") {
        name_ = t.size() > 1 ? t[1].text : "";
        section = Section::kNone;
      } else if (head == "OBJSENSE") {
        section = Section::kObjSense;
        if (t.size() > 1) {
          if (t[1].text == "MAX" || t[1].text == "MAXIMIZE") {
            Fail("maximization is not supported; negate the objective",
                 t[1].column);
          }
          section = Section::kNone;
        }
      } else if (head == "ROWS") {
        section = Section::kRows;
      } else if (head == "COLUMNS") {
        section = Section::kColumns;
      } else if (head == "RHS") {
        section = Section::kRhs;
      } else if (head == "RANGES") {
        section = Section::kRanges;
      } else if (head == "BOUNDS") {
        section = Section::kBounds;
      } else if (head == "ENDATA") {
        section = Section::kEnd;
      } else {
        Fail("unknown section '" + head + "'", t[0].column);
      }
      continue;
    }

    switch (section) {
      case Section::kObjSense: {
        const auto t = SplitFree(line);
        if (t[0].text == "MAX" || t[0].text == "MAXIMIZE") {
          Fail("maximization is not supported; negate the objective",
               t[0].column);
        }
        if (t[0].text != "MIN" && t[0].text != "MINIMIZE") {
          Fail("unknown objective sense '" + t[0].text + "'", t[0].column);
        }
        break;
      }
      case Section::kRows:
        RowsLine(line);
        break;
      case Section::kColumns:
        ColumnsLine(line);
        break;
      case Section::kRhs:
        RhsLine(line, false);
        break;
      case Section::kRanges:
        RhsLine(line, true);
        break;
      case Section::kBounds:
        BoundsLine(line);
        break;
      default:
        Fail("data line outside of a section");
    }
  }
  if (section != Section::kEnd) Fail("missing ENDATA");
  if (!objective_row_) throw ParseError("no objective (N) row", 0, 0);
  LpProblem p = Assemble();
  Validate(p);
  return p;
}

}  // namespace

ProblemFormat ParseProblemFormat(std::string_view name) {
  if (name == "native" || name == "json") return ProblemFormat::kNative;
  if (name == "mps" || name == "mps-subset") return ProblemFormat::kMps;
  throw ValidationError("unknown problem format '" + std::string(name) + "'");
}

ProblemFormat GuessProblemFormat(const std::filesystem::path& path) {
  std::string s = path.filename().string();
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s.ends_with(".mps") || s.ends_with(".mps.txt") ||
      s.ends_with(".freemps")) {
    return ProblemFormat::kMps;
  }
  return ProblemFormat::kNative;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "': file not found");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

LpProblem LoadProblem(const std::filesystem::path& path, ProblemFormat format) {
  const std::string text = ReadTextFile(path);
  LpProblem p =
      format == ProblemFormat::kMps ? ParseMps(text) : ParseNativeProblem(text);
  if (p.name.empty()) p.name = path.stem().string();
  return p;
}

LpProblem ParseNativeProblem(std::string_view text) {
  const json doc = ParseJson(text);
  if (!doc.is_object()) FieldError("$", "expected a JSON object");
  LpProblem p;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) FieldError("name", "expected a string");
    p.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("objective")) FieldError("objective", "missing");
  const json& obj = doc["objective"];
  if (!obj.is_object()) FieldError("objective", "expected an object");
  if (obj.contains("sense") && obj["sense"] != "min") {
    FieldError("objective.sense", "only \"min\" is supported");
  }
  if (!obj.contains("c")) FieldError("objective.c", "missing");
  p.cost = NumberArray(obj["c"], "objective.c");
  if (obj.contains("offset")) {
    p.objective_offset = Number(obj["offset"], "objective.offset");
  }
  const std::size_t n = p.cost.size();
  if (doc.contains("variables") && Count(doc["variables"], "variables") != n) {
    throw DimensionError("'variables' does not match len(objective.c)");
  }
  ConstraintBlock(doc, "inequalities", n, p.ineq_matrix, p.ineq_rhs);
  ConstraintBlock(doc, "equalities", n, p.eq_matrix, p.eq_rhs);

  p.lower.assign(n, 0.0);
  p.upper.assign(n, kInfinity);
  if (doc.contains("bounds")) {
    const json& b = doc["bounds"];
    if (!b.is_object()) FieldError("bounds", "expected an object");
    if (b.contains("lower"))
      p.lower = BoundArray(b["lower"], n, "bounds.lower");
    if (b.contains("upper"))
      p.upper = BoundArray(b["upper"], n, "bounds.upper");
  }
  Validate(p);
  return p;
}

LpProblem ParseMps(std::string_view text) { return MpsReader(text).Read(); }

std::string FormatNativeProblem(const LpProblem& p) {
  auto matrix = [](const DenseMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      rows.push_back(Vector(m.row(i).begin(), m.row(i).end()));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"dense", rows}};
  };
  json doc;
  doc["format"] = "imlp-lp";
  doc["version"] = 1;
  doc["name"] = p.name;
  doc["objective"] = {
      {"sense", "min"}, {"c", p.cost}, {"offset", p.objective_offset}};
  if (p.num_ineq() > 0) {
    doc["inequalities"] = {{"matrix", matrix(p.ineq_matrix)},
                           {"rhs", p.ineq_rhs}};
  }
  if (p.num_eq() > 0) {
    doc["equalities"] = {{"matrix", matrix(p.eq_matrix)}, {"rhs", p.eq_rhs}};
  }
  json lo = json::array();
  json hi = json::array();
  for (std::size_t i = 0; i < p.num_vars(); ++i) {
    lo.push_back(BoundJson(p.lower[i]));
    hi.push_back(BoundJson(p.upper[i]));
  }
  doc["bounds"] = {{"lower", lo}, {"upper", hi}};
  return doc.dump(2) + "\n";
}

std::string FormatSolution(const SolutionRecord& r) {
  json doc;
  doc["name"] = r.name;
  doc["status"] = r.status;
  doc["objective"] = NumberJson(r.objective);
  doc["iterations"] = r.iterations;
  json x = json::array();
  for (double v : r.x) x.push_back(NumberJson(v));
  json y = json::array();
  for (double v : r.y) y.push_back(NumberJson(v));
  doc["x"] = x;
  doc["y"] = y;
  json res = json::object();
  for (const auto& [k, v] : r.residuals) res[k] = NumberJson(v);
  doc["residuals"] = res;
  return doc.dump(2) + "\n";
}

SolutionRecord ParseSolution(std::string_view text) {
  const json doc = ParseJson(text);
  if (!doc.is_object()) FieldError("$", "expected a JSON object");
  SolutionRecord r;
  if (!doc.contains("objective")) FieldError("objective", "missing");
  r.objective = NumberFromJson(doc["objective"], "objective");
  if (doc.contains("name") && doc["name"].is_string()) {
    r.name = doc["name"].get<std::string>();
  }
  if (doc.contains("status") && doc["status"].is_string()) {
    r.status = doc["status"].get<std::string>();
  }
  if (doc.contains("iterations")) {
    r.iterations = doc["iterations"].get<long long>();
  }
  auto vec = [&](const char* key, Vector& out) {
    if (!doc.contains(key)) return;
    const json& a = doc[key];
    if (!a.is_array()) FieldError(key, "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.push_back(NumberFromJson(
          a[i], std::string(key) + "[" + std::to_string(i) + "]"));
    }
  };
  vec("x", r.x);
  vec("y", r.y);
  if (doc.contains("residuals") && doc["residuals"].is_object()) {
    for (const auto& [k, v] : doc["residuals"].items()) {
      r.residuals[k] = NumberFromJson(v, "residuals." + k);
    }
  }
  return r;
}

void WriteSolutionFile(const std::filesystem::path& path,
                       const SolutionRecord& record) {
  WriteTextFile(path, FormatSolution(record));
}

SolutionRecord ReadSolutionFile(const std::filesystem::path& path) {
  return ParseSolution(ReadTextFile(path));
}

}  // namespace imlp
