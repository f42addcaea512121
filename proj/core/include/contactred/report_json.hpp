#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace contactred {

// Write-only JSON document. Object keys keep insertion order and numbers
// have one fixed rendering, so a report built from the same values is the
// same byte sequence every time.
class JsonValue {
  public:
    JsonValue();  // null

    static JsonValue boolean(bool b);
    static JsonValue integer(std::int64_t v);
    static JsonValue number(double v);  // throws on NaN or infinity
    static JsonValue string(std::string s);
    static JsonValue array();
    static JsonValue object();

    // Object field; key must be new. Returns *this so fields chain.
    JsonValue& set(const std::string& key, JsonValue v);
    // Array element.
    JsonValue& push(JsonValue v);

    std::string dump(int indent = 2) const;

  private:
    enum class Kind { Null, Bool, Int, Double, String, Array, Object };
    Kind kind_;
    bool bool_ = false;
    std::int64_t int_ = 0;
    double double_ = 0.0;
    std::string string_;
    std::vector<JsonValue> items_;
    std::vector<std::pair<std::string, JsonValue>> fields_;

    void write(std::string& out, int indent, int depth) const;
};

// Fixed rendering used for every float in a report: 17 significant digits,
// enough for exact double round-trips.
std::string format_double(double v);

} // namespace contactred
