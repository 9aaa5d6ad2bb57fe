#include "jtk/report.hpp"

#include <sstream>

namespace jtk {

void Report::merge(const Report& other) {
    items.insert(items.end(), other.items.begin(), other.items.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    citations.insert(citations.end(), other.citations.begin(),
                     other.citations.end());
    witnesses.insert(witnesses.end(), other.witnesses.begin(),
                     other.witnesses.end());
    sign_change_found = sign_change_found || other.sign_change_found;
    defect_identically_zero =
        defect_identically_zero || other.defect_identically_zero;
    if (!measured_constant) measured_constant = other.measured_constant;
    for (const auto& [k, v] : other.asserted_flags) asserted_flags[k] = v;
}

namespace {

std::string point_str(const Point& p) {
    std::ostringstream os;
    os.precision(6);
    os << '{';
    for (auto it = p.begin(); it != p.end(); ++it) {
        if (it != p.begin()) os << ", ";
        os << it->first << '=' << it->second;
    }
    os << '}';
    return os.str();
}

const char* verdict_name(ZeroVerdict::Kind k) {
    switch (k) {
        case ZeroVerdict::ProvedZero:
            return "proved_zero";
        case ZeroVerdict::NumericallyZero:
            return "numerically_zero";
        default:
            return "nonzero";
    }
}

}  // namespace

std::string Report::text() const {
    std::ostringstream os;
    os.precision(6);
    for (const auto& it : items) {
        os << (it.passed() ? "[PASS] " : "[FAIL] ") << it.id << ": "
           << it.verdict.describe();
        if (!it.component.empty()) {
            os << " (component";
            for (int c : it.component) os << ' ' << c;
            os << ')';
        }
        os << '\n';
    }
    if (measured_constant)
        os << "measured constant: " << measured_constant->str() << '\n';
    for (const auto& [k, v] : asserted_flags)
        os << "asserted " << k << ": " << (v ? "true" : "false") << '\n';
    for (const auto& w : witnesses)
        os << "codim-1 witness: " << point_str(w.point) << " |P|=" << w.value
           << " grad=" << w.gradient_norm << '\n';
    for (const auto& n : notes) os << "note: " << n << '\n';
    for (const auto& c : citations) os << "citation: " << c << '\n';
    os << "overall: " << (pass() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

nlohmann::ordered_json Report::json() const {
    nlohmann::ordered_json doc;
    doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& it : items) {
        nlohmann::ordered_json c;
        c["id"] = it.id;
        c["verdict"] = verdict_name(it.verdict.kind);
        c["samples"] = it.verdict.samples;
        c["max_residual"] = it.verdict.max_residual;
        if (it.verdict.kind == ZeroVerdict::NonZero) {
            nlohmann::ordered_json w;
            for (const auto& [k, v] : it.verdict.witness) w[k] = v;
            c["witness"] = w;
            c["witness_value"] = it.verdict.witness_value;
        }
        if (!it.component.empty()) c["component"] = it.component;
        doc["checks"].push_back(c);
    }
    if (measured_constant)
        doc["measured_constant"] = measured_constant->str();
    if (!asserted_flags.empty()) {
        nlohmann::ordered_json f;
        for (const auto& [k, v] : asserted_flags) f[k] = v;
        doc["asserted_flags"] = f;
    }
    doc["sign_change_found"] = sign_change_found;
    doc["defect_identically_zero"] = defect_identically_zero;
    doc["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& w : witnesses) {
        nlohmann::ordered_json jw;
        nlohmann::ordered_json p;
        for (const auto& [k, v] : w.point) p[k] = v;
        jw["point"] = p;
        jw["value"] = w.value;
        jw["gradient_norm"] = w.gradient_norm;
        doc["witnesses"].push_back(jw);
    }
    doc["notes"] = notes;
    doc["citations"] = citations;
    doc["pass"] = pass();
    return doc;
}

}  // namespace jtk
