#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cclab/vec.hpp"

namespace cclab {

/// Format a double with 17 significant digits (round-trip exact).
std::string format_g17(double v);

/// RFC-4180-style CSV field escaping: quote when the field contains a comma,
/// quote, or newline; double embedded quotes.
std::string csv_escape(const std::string& field);

/// Join escaped fields with commas and terminate with '\n'.
std::string csv_row(const std::vector<std::string>& fields);

/// Minimal JSON document builder. Objects preserve insertion order and all
/// doubles are written with format_g17, so serialized reports are
/// byte-reproducible for identical inputs.
class JsonValue {
 public:
  static JsonValue null();
  static JsonValue boolean(bool b);
  static JsonValue integer(std::int64_t i);
  static JsonValue number(double d);
  static JsonValue string(std::string s);
  static JsonValue array();
  static JsonValue object();
  static JsonValue vec(const Vec& v);

  JsonValue& push(JsonValue item);
  JsonValue& set(std::string key, JsonValue value);

  void write(std::ostream& os) const;
  std::string dump() const;

 private:
  enum class Kind { Null, Bool, Int, Double, String, Array, Object };
  Kind kind_ = Kind::Null;
  bool b_ = false;
  std::int64_t i_ = 0;
  double d_ = 0.0;
  std::string s_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> members_;
};

}  // namespace cclab
