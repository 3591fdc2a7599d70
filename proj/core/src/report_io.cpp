#include "cclab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cclab/errors.hpp"

namespace cclab {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  out += '\n';
  return out;
}

JsonValue JsonValue::null() { return JsonValue{}; }

JsonValue JsonValue::boolean(bool b) {
  JsonValue v;
  v.kind_ = Kind::Bool;
  v.b_ = b;
  return v;
}

JsonValue JsonValue::integer(std::int64_t i) {
  JsonValue v;
  v.kind_ = Kind::Int;
  v.i_ = i;
  return v;
}

JsonValue JsonValue::number(double d) {
  JsonValue v;
  v.kind_ = Kind::Double;
  v.d_ = d;
  return v;
}

JsonValue JsonValue::string(std::string s) {
  JsonValue v;
  v.kind_ = Kind::String;
  v.s_ = std::move(s);
  return v;
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Kind::Array;
  return v;
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Kind::Object;
  return v;
}

JsonValue JsonValue::vec(const Vec& v) {
  JsonValue a = array();
  for (double c : v) a.push(number(c));
  return a;
}

JsonValue& JsonValue::push(JsonValue item) {
  if (kind_ != Kind::Array) throw Error("JsonValue::push on non-array");
  items_.push_back(std::move(item));
  return *this;
}

JsonValue& JsonValue::set(std::string key, JsonValue value) {
  if (kind_ != Kind::Object) throw Error("JsonValue::set on non-object");
  members_.emplace_back(std::move(key), std::move(value));
  return *this;
}

namespace {

void write_json_string(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\r': os << "\\r"; break;
      case '\t': os << "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          os << buf;
        } else {
          os << c;
        }
    }
  }
  os << '"';
}

}  // namespace

void JsonValue::write(std::ostream& os) const {
  switch (kind_) {
    case Kind::Null: os << "null"; break;
    case Kind::Bool: os << (b_ ? "true" : "false"); break;
    case Kind::Int: os << i_; break;
    case Kind::Double:
      if (std::isfinite(d_)) os << format_g17(d_);
      else os << "null";
      break;
    case Kind::String: write_json_string(os, s_); break;
    case Kind::Array:
      os << '[';
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) os << ',';
        items_[i].write(os);
      }
      os << ']';
      break;
    case Kind::Object:
      os << '{';
      for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) os << ',';
        write_json_string(os, members_[i].first);
        os << ':';
        members_[i].second.write(os);
      }
      os << '}';
      break;
  }
}

std::string JsonValue::dump() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace cclab
