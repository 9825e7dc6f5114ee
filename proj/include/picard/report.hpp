#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "suites.hpp"

namespace picard::report {

inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// JSON numbers are written with 17 significant digits: values are stored as
// tagged strings and unquoted after dump.
inline const std::string &num_tag() {
    static const std::string t = "@@num@@";
    return t;
}
inline std::string jnum(double x) { return std::isfinite(x) ? num_tag() + num(x) : num_tag() + "null"; }
inline std::string dump(const nlohmann::ordered_json &j) {
    std::string s = j.dump(2), out;
    std::string open = "\"" + num_tag();
    std::size_t pos = 0;
    for (;;) {
        std::size_t q = s.find(open, pos);
        if (q == std::string::npos) break;
        std::size_t e = s.find('"', q + open.size());
        out += s.substr(pos, q - pos) + s.substr(q + open.size(), e - q - open.size());
        pos = e + 1;
    }
    return out + s.substr(pos) + "\n";
}

// Ordered key/value metadata echoed into every output file.
using Metadata = std::vector<std::pair<std::string, std::string>>;

inline std::string csv_header(const Metadata &meta) {
    std::string s;
    for (auto &[k, v] : meta) s += "# " + k + "=" + v + "\n";
    return s;
}

inline nlohmann::ordered_json meta_json(const Metadata &meta) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (auto &[k, v] : meta) j[k] = v;
    return j;
}

// Timings are left out so that the record depends only on the inputs.
inline nlohmann::ordered_json suite_json(const verify::SuiteReport &r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["pass"] = r.pass();
    j["checks"] = nlohmann::ordered_json::array();
    for (auto &c : r.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["value"] = jnum(c.value);
        e["tolerance"] = jnum(c.tolerance);
        e["pass"] = c.pass;
        if (!c.note.empty()) e["note"] = c.note;
        j["checks"].push_back(e);
    }
    return j;
}

inline std::string suites_json(const std::vector<verify::SuiteReport> &rs, const Metadata &meta) {
    nlohmann::ordered_json j;
    j["config"] = meta_json(meta);
    j["suites"] = nlohmann::ordered_json::array();
    for (auto &r : rs) j["suites"].push_back(suite_json(r));
    return dump(j);
}

inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline std::string suites_csv(const std::vector<verify::SuiteReport> &rs, const Metadata &meta) {
    std::ostringstream os;
    os << csv_header(meta) << "suite,check,value,tolerance,pass\n";
    for (auto &r : rs)
        for (auto &c : r.checks)
            os << r.suite << "," << csv_field(c.name) << "," << num(c.value) << "," << num(c.tolerance) << ","
               << (c.pass ? "true" : "false") << "\n";
    return os.str();
}

} // namespace picard::report
