#include "jtk/structfile.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace jtk {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

const SkewField* StructureFile::block(const std::string& name) const {
    for (const auto& [n, f] : blocks)
        if (n == name) return &f;
    return nullptr;
}

JacobiStructure StructureFile::to_jacobi() const {
    const SkewField* pi = block("pi");
    const SkewField* e = block("E");
    if (!pi || pi->degree() != 2)
        throw std::invalid_argument("structure file needs a 'pi deg 2' block");
    if (!e || e->degree() != 1)
        throw std::invalid_argument("structure file needs an 'E deg 1' block");
    return JacobiStructure(chart, *pi, *e);
}

StructureFile parse_structure_file(const std::string& text) {
    StructureFile sf;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    bool have_chart = false;
    SkewField* current = nullptr;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (!have_chart) {
            if (toks[0] != "chart" || toks.size() < 2)
                throw FileParseError("expected 'chart <name>...'", lineno);
            try {
                sf.chart = Chart({toks.begin() + 1, toks.end()});
            } catch (const std::exception& e) {
                throw FileParseError(e.what(), lineno);
            }
            have_chart = true;
            continue;
        }
        if (toks[0] == "assert") {
            if (toks.size() != 3 || (toks[2] != "true" && toks[2] != "false"))
                throw FileParseError("expected 'assert <flag> true|false'", lineno);
            sf.flags[toks[1]] = toks[2] == "true";
            continue;
        }
        if (toks[0] == "note") {
            auto pos = line.find("note");
            sf.notes.push_back(line.substr(pos + 5));
            continue;
        }
        if (toks[0] == "(") {
            if (!current)
                throw FileParseError("term line outside a block", lineno);
            auto close = std::find(toks.begin(), toks.end(), ")");
            if (close == toks.end())
                throw FileParseError("missing ')' in term line", lineno);
            SkewField::Index idx;
            for (auto it = toks.begin() + 1; it != close; ++it) {
                int i = sf.chart.index_of(*it);
                if (i < 0)
                    throw FileParseError("unknown coordinate " + *it, lineno);
                idx.push_back(i);
            }
            if (static_cast<int>(idx.size()) != current->degree())
                throw FileParseError("index tuple size does not match block degree",
                                     lineno);
            auto eq = close + 1;
            if (eq == toks.end() || *eq != "=")
                throw FileParseError("expected '=' after index tuple", lineno);
            auto epos = line.find('=', line.find(')'));
            std::string expr_text = line.substr(epos + 1);
            try {
                current->add_term(idx, parse_expr(expr_text, sf.chart));
            } catch (const std::exception& e) {
                throw FileParseError(e.what(), lineno);
            }
            continue;
        }
        // Block header: <name> deg <k>
        if (toks.size() == 3 && toks[1] == "deg") {
            int deg;
            try {
                deg = std::stoi(toks[2]);
            } catch (const std::exception&) {
                throw FileParseError("bad degree in block header", lineno);
            }
            if (deg < 0 || deg > sf.chart.dim())
                throw FileParseError("degree out of range for chart", lineno);
            sf.blocks.emplace_back(toks[0],
                                   SkewField::multivector(sf.chart, deg));
            current = &sf.blocks.back().second;
            continue;
        }
        throw FileParseError("unrecognized line: " + line, lineno);
    }
    if (!have_chart) throw FileParseError("empty file: missing chart line", 1);
    return sf;
}

std::string emit_structure_file(const StructureFile& sf) {
    std::ostringstream os;
    os << "chart";
    for (const auto& n : sf.chart.names()) os << ' ' << n;
    os << '\n';
    for (const auto& [name, field] : sf.blocks) {
        os << name << " deg " << field.degree() << '\n';
        os << field.str();
    }
    for (const auto& [flag, v] : sf.flags)
        os << "assert " << flag << ' ' << (v ? "true" : "false") << '\n';
    for (const auto& n : sf.notes) os << "note " << n << '\n';
    return os.str();
}

std::string emit_structure_file(const JacobiStructure& j) {
    StructureFile sf;
    sf.chart = j.chart;
    sf.blocks.emplace_back("pi", j.pi);
    sf.blocks.emplace_back("E", j.e);
    return emit_structure_file(sf);
}

std::string emit_structure_file(const HomogeneousPoisson& hp) {
    StructureFile sf;
    sf.chart = hp.chart;
    sf.blocks.emplace_back("pi", hp.pi);
    sf.blocks.emplace_back("Z", hp.z);
    sf.notes.push_back("homogeneity constant " + hp.homogeneity_constant.str());
    return emit_structure_file(sf);
}

SmoothMap parse_map_file(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    std::optional<Chart> source, target;
    std::vector<std::pair<std::string, std::string>> assigns;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (!source) {
            if (toks[0] != "map" || toks.size() < 5 || toks[1] != "from")
                throw FileParseError("expected 'map from <names> to <names>'",
                                     lineno);
            auto to = std::find(toks.begin() + 2, toks.end(), "to");
            if (to == toks.end() || to == toks.begin() + 2 || to + 1 == toks.end())
                throw FileParseError("expected 'map from <names> to <names>'",
                                     lineno);
            try {
                source = Chart({toks.begin() + 2, to});
                target = Chart({to + 1, toks.end()});
            } catch (const std::exception& e) {
                throw FileParseError(e.what(), lineno);
            }
            continue;
        }
        auto epos = line.find('=');
        if (epos == std::string::npos || toks.size() < 3 || toks[1] != "=")
            throw FileParseError("expected '<target coord> = <expression>'",
                                 lineno);
        assigns.emplace_back(toks[0], line.substr(epos + 1));
    }
    if (!source) throw FileParseError("empty file: missing map line", 1);
    std::vector<Expr> comps(target->dim());
    std::vector<bool> seen(target->dim(), false);
    for (const auto& [name, expr_text] : assigns) {
        int k = target->index_of(name);
        if (k < 0) throw FileParseError("unknown target coordinate " + name, 1);
        try {
            comps[k] = parse_expr(expr_text, *source);
        } catch (const std::exception& e) {
            throw FileParseError(std::string(e.what()) + " (component " + name + ")", 1);
        }
        seen[k] = true;
    }
    for (int k = 0; k < target->dim(); ++k)
        if (!seen[k])
            throw FileParseError("missing component for target coordinate " +
                                     target->name(k), 1);
    return SmoothMap(*source, *target, std::move(comps));
}

}  // namespace jtk
