#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cesaro/linalg_core.hpp"
#include "cesaro/shift_lab.hpp"

namespace cesaro::io {

using nlohmann::json;

/// {"d": D, "entries": [[[re, im], ...], ...]} with rows in order.
inline json to_json(const Matrix& a)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            row.push_back({a(i, j).real(), a(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return json{{"d", a.rows()}, {"entries", std::move(rows)}};
}

inline Matrix matrix_from_json(const json& doc)
{
    auto fail = [](const std::string& why) { throw Error(ErrorCode::Parse, "matrix file: " + why); };
    if (!doc.is_object() || !doc.contains("d") || !doc.contains("entries")) {
        fail("expected an object with keys \"d\" and \"entries\"");
    }
    if (!doc["d"].is_number_integer() || doc["d"].get<std::int64_t>() < 1) {
        fail("\"d\" must be a positive integer");
    }
    const auto d = doc["d"].get<Eigen::Index>();
    const json& rows = doc["entries"];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d) {
        fail("\"entries\" must hold d rows");
    }
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
            fail("row " + std::to_string(i) + " must hold d entries");
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            const json& z = row[static_cast<std::size_t>(j)];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                fail("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") must be [re, im]");
            }
            const Complex v{z[0].get<double>(), z[1].get<double>()};
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                fail("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not finite");
            }
            a(i, j) = v;
        }
    }
    return a;
}

inline json parse_json_text(const std::string& text, const std::string& origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, origin + ": " + e.what());
    }
}

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Parse, "cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Matrix read_matrix(const std::string& path) { return matrix_from_json(parse_json_text(read_text(path), path)); }

/// 64-bit FNV-1a of a byte string, used as the input digest in reports.
inline std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

/// Custom weighted-shift rule:
/// {"default": 1.0, "rules": [{"kind": "power_set"|"window", "base": 3,
///   "offset": 0 | "l", "scale": 1, "length_fn": "const:1" | "l", "value": w}, ...]}
inline shift::ShiftRule shift_rule_from_json(const json& doc)
{
    auto fail = [](const std::string& why) { throw Error(ErrorCode::Parse, "shift rule: " + why); };
    if (!doc.is_object()) {
        fail("expected an object");
    }
    shift::ShiftRule rule;
    rule.name = "Custom";
    if (doc.contains("default")) {
        if (!doc["default"].is_number()) {
            fail("\"default\" must be a number");
        }
        rule.default_value = doc["default"].get<double>();
    }
    if (!doc.contains("rules")) {
        return rule;
    }
    if (!doc["rules"].is_array()) {
        fail("\"rules\" must be an array");
    }
    for (const json& r : doc["rules"]) {
        if (!r.is_object() || !r.contains("kind") || !r.contains("value")) {
            fail("each rule needs \"kind\" and \"value\"");
        }
        shift::WeightRule w;
        const std::string kind = r["kind"].is_string() ? r["kind"].get<std::string>() : "";
        if (kind == "power_set") {
            w.kind = shift::WeightRule::Kind::PowerSet;
        } else if (kind == "window") {
            w.kind = shift::WeightRule::Kind::Window;
            w.length_is_l = true;
        } else {
            fail("unknown kind \"" + kind + "\"");
        }
        if (!r["value"].is_number()) {
            fail("\"value\" must be a number");
        }
        w.value = r["value"].get<double>();
        if (r.contains("base")) {
            if (!r["base"].is_number_integer()) {
                fail("\"base\" must be an integer");
            }
            w.base = r["base"].get<std::int64_t>();
        }
        if (r.contains("scale")) {
            if (!r["scale"].is_number_integer()) {
                fail("\"scale\" must be an integer");
            }
            w.scale = r["scale"].get<std::int64_t>();
        }
        if (r.contains("offset")) {
            const json& o = r["offset"];
            if (o.is_string() && o.get<std::string>() == "l") {
                w.offset_is_l = true;
            } else if (o.is_number_integer()) {
                w.offset = o.get<std::int64_t>();
            } else {
                fail("\"offset\" must be an integer or \"l\"");
            }
        }
        if (r.contains("length_fn")) {
            const std::string fn = r["length_fn"].is_string() ? r["length_fn"].get<std::string>() : "";
            if (fn == "l") {
                w.length_is_l = true;
            } else if (fn.rfind("const:", 0) == 0) {
                try {
                    std::size_t used = 0;
                    w.length = std::stoll(fn.substr(6), &used);
                    if (used != fn.size() - 6 || w.length < 1) {
                        fail("bad length_fn \"" + fn + "\"");
                    }
                } catch (const std::logic_error&) {
                    fail("bad length_fn \"" + fn + "\"");
                }
                w.length_is_l = false;
            } else {
                fail("length_fn must be \"l\" or \"const:<n>\"");
            }
        }
        rule.rules.push_back(w);
    }
    return rule;
}

} // namespace cesaro::io
