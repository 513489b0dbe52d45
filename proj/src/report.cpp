#include "ssb/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ssb {

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "text") return ReportFormat::Text;
  throw InputError("unknown report format '" + name + "' (expected json or text)");
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

namespace {

std::string scalar(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();  // strings are escaped by nlohmann; integers and literals verbatim
}

void write_json(const json& v, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {  // std::map storage: sorted keys
      if (!first) os << ",\n";
      first = false;
      os << inner << json(it.key()).dump() << ": ";
      write_json(it.value(), indent + 1, os);
    }
    os << "\n" << pad << "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      os << "[]";
      return;
    }
    // scalars and arrays of scalars (matrix rows of [re, im] pairs) stay on one line
    bool compact = true;
    for (const auto& e : v) {
      if (e.is_object()) compact = false;
      if (e.is_array())
        for (const auto& x : e)
          if (x.is_structured()) compact = false;
    }
    if (compact) {
      os << "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i ? ", " : "");
        if (v[i].is_array()) {
          os << "[";
          for (std::size_t k = 0; k < v[i].size(); ++k) os << (k ? ", " : "") << scalar(v[i][k]);
          os << "]";
        } else {
          os << scalar(v[i]);
        }
      }
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ",\n";
      os << inner;
      write_json(v[i], indent + 1, os);
    }
    os << "\n" << pad << "]";
  } else {
    os << scalar(v);
  }
}

std::string compact(const json& v) {
  if (v.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + compact(v[i]);
    return out + "]";
  }
  if (v.is_object()) {
    std::string out = "{";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      out += (first ? "" : ", ") + it.key() + ": " + compact(it.value());
      first = false;
    }
    return out + "}";
  }
  return scalar(v);
}

std::string text_scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return compact(v);
}

// Array of objects with identical keys and no nested objects.
bool is_table(const json& v) {
  if (!v.is_array() || v.empty() || !v.front().is_object()) return false;
  std::vector<std::string> keys;
  for (auto it = v.front().begin(); it != v.front().end(); ++it) keys.push_back(it.key());
  for (const auto& row : v) {
    if (!row.is_object() || row.size() != keys.size()) return false;
    for (const auto& k : keys) {
      if (!row.contains(k) || row.at(k).is_object()) return false;
      if (row.at(k).is_array())
        for (const auto& x : row.at(k))
          if (x.is_object()) return false;
    }
  }
  return true;
}

void write_table(const json& v, const std::string& pad, std::ostringstream& os) {
  std::vector<std::string> keys;
  for (auto it = v.front().begin(); it != v.front().end(); ++it) keys.push_back(it.key());
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& k : keys) width.push_back(k.size());
  for (const auto& row : v) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      line.push_back(text_scalar(row.at(keys[i])));
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto emit_row = [&](const std::vector<std::string>& line) {
    os << pad;
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << line[i];
      if (i + 1 < line.size()) os << std::string(width[i] - line[i].size() + 2, ' ');
    }
    os << "\n";
  };
  emit_row(keys);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  emit_row(rule);
  for (const auto& line : cells) emit_row(line);
}

void write_text(const json& v, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (auto it = v.begin(); it != v.end(); ++it) {
    const json& x = it.value();
    if (x.is_object() && !x.empty()) {
      os << pad << it.key() << ":\n";
      write_text(x, indent + 1, os);
    } else if (is_table(x)) {
      os << pad << it.key() << ":\n";
      write_table(x, pad + "  ", os);
    } else if (x.is_array() && !x.empty() && x.front().is_object()) {
      os << pad << it.key() << ":\n";
      for (std::size_t i = 0; i < x.size(); ++i) {
        os << pad << "  [" << i << "]\n";
        write_text(x[i], indent + 2, os);
      }
    } else {
      os << pad << it.key() << ": " << text_scalar(x) << "\n";
    }
  }
}

}  // namespace

std::string emit_json(const json& doc) {
  std::ostringstream os;
  write_json(doc, 0, os);
  os << "\n";
  return os.str();
}

std::string emit_text(const json& doc) {
  std::ostringstream os;
  if (doc.is_object())
    write_text(doc, 0, os);
  else
    os << text_scalar(doc) << "\n";
  return os.str();
}

std::string emit_report(const json& doc, ReportFormat format) {
  return format == ReportFormat::Json ? emit_json(doc) : emit_text(doc);
}

}  // namespace ssb
