#pragma once

// TOML run configurations: parsing through toml++ into nlohmann::json, so TOML
// and JSON inputs share one validation path, and a writer for serialization.
// The source line of every key is kept for diagnostics. Dates and times are
// rejected.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <toml.hpp>

#include "decoh/errors.hpp"

namespace decoh::tomlio {

using json = nlohmann::ordered_json;

struct Document {
    json root = json::object();
    std::map<std::string, int> lines;  // json pointer -> 1-based source line
};

class ParseError : public ConfigError {
public:
    ParseError(int line, const std::string& msg) : ConfigError("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

namespace detail {

inline json convert(const ::toml::node& node, const json::json_pointer& ptr, Document& doc) {
    doc.lines[ptr.to_string()] = static_cast<int>(node.source().begin.line);
    if (const auto* t = node.as_table()) {
        json obj = json::object();
        for (const auto& [key, child] : *t) {
            const std::string k(key.str());
            obj[k] = convert(child, ptr / k, doc);
        }
        return obj;
    }
    if (const auto* a = node.as_array()) {
        json arr = json::array();
        for (std::size_t i = 0; i < a->size(); ++i) arr.push_back(convert(*a->get(i), ptr / i, doc));
        return arr;
    }
    if (const auto* v = node.as_string()) return v->get();
    if (const auto* v = node.as_integer()) return v->get();
    if (const auto* v = node.as_floating_point()) return v->get();
    if (const auto* v = node.as_boolean()) return v->get();
    throw ParseError(static_cast<int>(node.source().begin.line), "dates and times are not supported");
}

inline std::string format_key(const std::string& k) {
    const bool bare = !k.empty() && std::all_of(k.begin(), k.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
    return bare ? k : json(k).dump();
}

inline std::string format_scalar(const json& v) {
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        std::string s = buf;
        if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
        return s;
    }
    if (v.is_array() || v.is_object()) {
        std::string out = v.is_array() ? "[" : "{";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ", ";
            first = false;
            if (v.is_object()) out += format_key(it.key()) + " = ";
            out += format_scalar(*it);
        }
        return out + (v.is_array() ? "]" : "}");
    }
    return v.dump();
}

inline bool is_table_array(const json& v) {
    return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_object(); });
}

inline void write_table(std::ostringstream& out, const json& obj, const std::string& prefix) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!it->is_object() && !is_table_array(*it)) out << format_key(it.key()) << " = " << format_scalar(*it) << "\n";
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const std::string name = prefix.empty() ? format_key(it.key()) : prefix + "." + format_key(it.key());
        if (it->is_object()) {
            out << "\n[" << name << "]\n";
            write_table(out, *it, name);
        } else if (is_table_array(*it)) {
            for (const auto& e : *it) {
                out << "\n[[" << name << "]]\n";
                write_table(out, e, name);
            }
        }
    }
}

}  // namespace detail

inline Document parse(std::string_view text) {
    ::toml::table table;
    try {
        table = ::toml::parse(text);
    } catch (const ::toml::parse_error& e) {
        throw ParseError(static_cast<int>(e.source().begin.line), std::string(e.description()));
    }
    Document doc;
    doc.root = detail::convert(table, json::json_pointer(), doc);
    return doc;
}

/// Serializes an object tree; floats use 17 significant digits so values survive a round trip.
inline std::string dump(const json& root) {
    std::ostringstream out;
    detail::write_table(out, root, "");
    return out.str();
}

}  // namespace decoh::tomlio
