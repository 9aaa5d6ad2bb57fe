#pragma once

#include "jtk/multivector.hpp"
#include "jtk/zero.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace jtk {

// One identity/relation check inside a report.
struct CheckItem {
    std::string id;
    ZeroVerdict verdict;
    std::vector<int> component;  // offending coefficient tuple, if any

    bool passed() const { return verdict.is_zero(); }
};

// A located zero of a scalar field found by bisection.
struct LocusWitness {
    Point point;
    double value = 0.0;          // |field| at the point (<= 1e-10 by construction)
    double gradient_norm = 0.0;  // finite-difference gradient norm
};

// Uniform result type for structure and morphism checks: identity verdicts,
// singular-locus findings, echoed user assertions, and citation strings.
struct Report {
    std::vector<CheckItem> items;
    std::vector<std::string> notes;
    std::vector<std::string> citations;
    std::vector<LocusWitness> witnesses;
    bool sign_change_found = false;
    bool defect_identically_zero = false;
    std::optional<Rational> measured_constant;
    // User-supplied flags echoed verbatim, never verified.
    std::map<std::string, bool> asserted_flags;

    bool pass() const {
        for (const auto& it : items)
            if (!it.passed()) return false;
        return true;
    }

    void add(std::string id, ZeroVerdict v, std::vector<int> component = {}) {
        items.push_back({std::move(id), std::move(v), std::move(component)});
    }
    void add(std::string id, const FieldZero& fz) {
        items.push_back({std::move(id), fz.verdict, fz.component});
    }
    void merge(const Report& other);

    std::string text() const;
    nlohmann::ordered_json json() const;
};

using StructureReport = Report;
using MorphismReport = Report;

}  // namespace jtk
