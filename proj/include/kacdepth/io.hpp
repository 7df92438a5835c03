#pragma once

// JSON encodings of quivers, polynomials and series. Requires nlohmann/json.

#include <kacdepth/laurent_poly.hpp>
#include <kacdepth/quiver.hpp>
#include <kacdepth/rat_func.hpp>
#include <kacdepth/tseries.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kacdepth {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "kacdepth/1";

/// Raised on input that does not follow the documented formats.
class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// {"vertices": n, "arrows": [[s, t], ...]}, 0-based, arrow order = array order.
inline Quiver quiver_from_json(const Json& j)
{
    auto bad = [](const std::string& why) { return FormatError("malformed quiver JSON: " + why); };
    if (!j.is_object())
        throw bad("top level must be an object");
    if (!j.contains("vertices") || !j["vertices"].is_number_integer())
        throw bad("\"vertices\" must be an integer");
    if (!j.contains("arrows") || !j["arrows"].is_array())
        throw bad("\"arrows\" must be an array");
    const long n = j["vertices"].get<long>();
    if (n < 0 || n > 64)
        throw bad("vertex count out of range");
    std::vector<Arrow> arrows;
    for (const auto& a : j["arrows"]) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer())
            throw bad("each arrow must be a pair [source, target]");
        const long s = a[0].get<long>(), t = a[1].get<long>();
        if (s < 0 || s >= n || t < 0 || t >= n)
            throw bad("arrow endpoint out of range");
        arrows.push_back({static_cast<int>(s), static_cast<int>(t)});
    }
    return Quiver(static_cast<int>(n), std::move(arrows));
}

inline Quiver parse_quiver(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("malformed quiver JSON: ") + e.what());
    }
    return quiver_from_json(j);
}

inline Quiver load_quiver(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open quiver file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_quiver(ss.str());
}

inline Json to_json(const Quiver& q)
{
    Json arrows = Json::array();
    for (const auto& a : q.arrows())
        arrows.push_back({a.source, a.target});
    return Json{{"vertices", q.nvertices()}, {"arrows", arrows}};
}

/// [[exponent, numerator, denominator], ...] in ascending exponent order.
inline Json to_json(const LaurentPoly& p)
{
    Json out = Json::array();
    for (const auto& [e, c] : p.terms())
        out.push_back({e, c.get_num().get_str(), c.get_den().get_str()});
    return out;
}

inline LaurentPoly poly_from_json(const Json& j)
{
    if (!j.is_array())
        throw FormatError("polynomial must be an array of triples");
    LaurentPoly p;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_string() || !t[2].is_string())
            throw FormatError("polynomial term must be [exponent, numerator, denominator]");
        try {
            Rational c{Integer(t[1].get<std::string>()), Integer(t[2].get<std::string>())};
            if (c.get_den() == 0)
                throw FormatError("zero denominator in polynomial term");
            c.canonicalize();
            p.add_term(t[0].get<int>(), c);
        } catch (const FormatError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("bad integer in polynomial term: ") + e.what());
        }
    }
    return p;
}

inline Json to_json(const RatFunc& f)
{
    return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}, {"text", f.to_string()}};
}

inline RatFunc ratfunc_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw FormatError("rational function must be an object with \"num\" and \"den\"");
    return RatFunc::make(poly_from_json(j["num"]), poly_from_json(j["den"]));
}

/// {"bound": [...], "terms": [[exponent-vector, ratfunc], ...]}
inline Json to_json(const TSeries& s)
{
    Json terms = Json::array();
    for (const auto& [r, c] : s.terms())
        terms.push_back({r, to_json(c)});
    return Json{{"bound", s.bound()}, {"terms", terms}};
}

inline TSeries series_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("bound") || !j.contains("terms") || !j["terms"].is_array())
        throw FormatError("series must be an object with \"bound\" and \"terms\"");
    TSeries s(j["bound"].get<Exponent>());
    for (const auto& t : j["terms"]) {
        if (!t.is_array() || t.size() != 2)
            throw FormatError("series term must be [exponent-vector, ratfunc]");
        s.add_term(t[0].get<Exponent>(), ratfunc_from_json(t[1]));
    }
    return s;
}

inline std::string rational_string(const Rational& r)
{
    return r.get_str();
}

} // namespace kacdepth
