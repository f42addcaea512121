#include "contactred/report_json.hpp"

#include "contactred/error.hpp"

#include <cmath>
#include <cstdio>

namespace contactred {

std::string format_double(double v) {
    if (!std::isfinite(v))
        throw Error("non-finite number in a report");
    if (v == 0.0)
        v = 0.0;  // collapse -0 so the two zero bit patterns render alike
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    out += '"';
}

void write_newline_indent(std::string& out, int indent, int depth) {
    out += '\n';
    out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

} // namespace

JsonValue::JsonValue() : kind_(Kind::Null) {}

JsonValue JsonValue::boolean(bool b) {
    JsonValue v;
    v.kind_ = Kind::Bool;
    v.bool_ = b;
    return v;
}

JsonValue JsonValue::integer(std::int64_t i) {
    JsonValue v;
    v.kind_ = Kind::Int;
    v.int_ = i;
    return v;
}

JsonValue JsonValue::number(double d) {
    JsonValue v;
    v.kind_ = Kind::Double;
    v.double_ = d;
    (void)format_double(d);  // reject NaN and infinity at construction
    return v;
}

JsonValue JsonValue::string(std::string s) {
    JsonValue v;
    v.kind_ = Kind::String;
    v.string_ = std::move(s);
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

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    if (kind_ != Kind::Object)
        throw Error("set() on a non-object JSON value");
    for (const auto& [k, unused] : fields_) {
        (void)unused;
        if (k == key)
            throw Error("duplicate JSON key: " + key);
    }
    fields_.emplace_back(key, std::move(v));
    return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
    if (kind_ != Kind::Array)
        throw Error("push() on a non-array JSON value");
    items_.push_back(std::move(v));
    return *this;
}

void JsonValue::write(std::string& out, int indent, int depth) const {
    switch (kind_) {
    case Kind::Null:
        out += "null";
        break;
    case Kind::Bool:
        out += bool_ ? "true" : "false";
        break;
    case Kind::Int:
        out += std::to_string(int_);
        break;
    case Kind::Double:
        out += format_double(double_);
        break;
    case Kind::String:
        write_escaped(out, string_);
        break;
    case Kind::Array:
        if (items_.empty()) {
            out += "[]";
            break;
        }
        out += '[';
        for (std::size_t i = 0; i < items_.size(); ++i) {
            if (i)
                out += ',';
            write_newline_indent(out, indent, depth + 1);
            items_[i].write(out, indent, depth + 1);
        }
        write_newline_indent(out, indent, depth);
        out += ']';
        break;
    case Kind::Object:
        if (fields_.empty()) {
            out += "{}";
            break;
        }
        out += '{';
        for (std::size_t i = 0; i < fields_.size(); ++i) {
            if (i)
                out += ',';
            write_newline_indent(out, indent, depth + 1);
            write_escaped(out, fields_[i].first);
            out += ": ";
            fields_[i].second.write(out, indent, depth + 1);
        }
        write_newline_indent(out, indent, depth);
        out += '}';
        break;
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    return out;
}

} // namespace contactred
