#include "jtk/families.hpp"
#include "jtk/structfile.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace jtk;

enum ExitCode { kPass = 0, kMathFail = 1, kParseFail = 2, kPrecondFail = 3 };

struct Options {
    int samples = 64;
    double box = 2.0;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::string format = "text";

    SampleConfig cfg() const {
        SampleConfig c;
        c.samples = samples;
        c.box = box;
        c.tol = tol;
        c.seed = seed;
        return c;
    }
};

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--samples", opt.samples, "sample points per zero test")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--box", opt.box, "half-width of the sampling box");
    cmd->add_option("--tol", opt.tol, "relative residual tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "rng seed");
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));
}

void print_report(const Report& rep, const Options& opt) {
    if (opt.format == "structured")
        std::cout << rep.json().dump(2) << '\n';
    else
        std::cout << rep.text();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int cmd_check_jacobi(const std::string& file, const Options& opt) {
    StructureFile sf = parse_structure_file(slurp(file));
    JacobiStructure j = sf.to_jacobi();
    Report rep = check_jacobi(j, opt.cfg());
    bool identities_ok = rep.pass();
    if (j.chart.dim() % 2 == 1)
        rep.merge(singular_locus_report(j, opt.cfg()));
    print_report(rep, opt);
    return identities_ok ? kPass : kMathFail;
}

int cmd_check_resolution(const std::string& src_file, const std::string& tgt_file,
                         const std::string& map_file, const Options& opt) {
    StructureFile src = parse_structure_file(slurp(src_file));
    StructureFile tgt = parse_structure_file(slurp(tgt_file));
    SmoothMap map = parse_map_file(slurp(map_file));
    ResolutionClaim claim{map, src.to_jacobi(), tgt.to_jacobi(), false, false,
                          false};
    auto flag = [&](const char* name, bool& out) {
        auto it = tgt.flags.find(name);
        if (it != tgt.flags.end()) out = it->second;
        it = src.flags.find(name);
        if (it != src.flags.end()) out = it->second;
    };
    flag("surjective", claim.surjective);
    flag("proper", claim.proper);
    flag("semi_connected", claim.semi_connected);
    if (claim.map.source != claim.source.chart ||
        claim.map.target != claim.target.chart) {
        std::cerr << "map charts do not match the structure charts\n";
        return kPrecondFail;
    }
    Report rep = check_contact_resolution(claim, opt.cfg());
    print_report(rep, opt);
    return rep.pass() ? kPass : kMathFail;
}

int cmd_poissonify(const std::string& file, const std::string& out,
                   bool slice_roundtrip, const Options& opt) {
    StructureFile sf = parse_structure_file(slurp(file));
    JacobiStructure j = sf.to_jacobi();
    HomogeneousPoisson hp = poissonify(j);
    std::string emitted = emit_structure_file(hp);
    if (out.empty()) {
        std::cout << emitted;
    } else {
        std::ofstream os(out);
        os << emitted;
    }
    Report rep = check_poisson(hp.pi, opt.cfg());
    rep.merge(check_homogeneous(hp, opt.cfg()));
    // Count samples at which the Poissonification is nondegenerate.
    {
        int half = hp.chart.dim() / 2;
        SkewField top = mv_power(hp.pi, half);
        SkewField::Index all(hp.chart.dim());
        for (int i = 0; i < hp.chart.dim(); ++i) all[i] = i;
        Expr coeff = top.coeff(all);
        int good = 0;
        for (int i = 0; i < opt.samples; ++i) {
            Point p = sample_point(hp.chart, opt.cfg(), i);
            Expr::EvalStats stats;
            try {
                double v = coeff.eval(p, stats);
                if (std::abs(v) > opt.tol * (1.0 + stats.max_abs)) ++good;
            } catch (const std::exception&) {
            }
        }
        rep.notes.push_back("symplectic at " + std::to_string(good) + "/" +
                            std::to_string(opt.samples) + " samples");
    }
    bool roundtrip_ok = true;
    if (slice_roundtrip) {
        JacobiStructure back = slice_induce(hp, hp.chart.name(0), 0);
        SkewField dpi = sub(back.pi, j.pi);
        SkewField de = sub(back.e, j.e);
        dpi.prune();
        de.prune();
        roundtrip_ok = dpi.empty() && de.empty();
        rep.notes.push_back(std::string("slice round-trip at ") +
                            hp.chart.name(0) + " = 0: " +
                            (roundtrip_ok ? "PASS" : "FAIL"));
    }
    print_report(rep, opt);
    return rep.pass() && roundtrip_ok ? kPass : kMathFail;
}

int cmd_family(const std::string& f_text, int n, int m, const std::string& out,
               const Options& opt) {
    Chart line({"y"});
    Expr f_expr = parse_expr(f_text, line);
    auto f = unipoly_from_expr(f_expr, "y");
    if (!f) {
        std::cerr << "--f must be a polynomial in y\n";
        return kParseFail;
    }
    FamilySpec spec{*f, n, m};
    FamilySolution sol;
    try {
        sol = solve_family(spec);
    } catch (const NoPolynomialSolution& e) {
        std::cerr << e.what() << '\n';
        return kMathFail;
    }
    std::cout << "g = " << unipoly_to_expr(sol.g, "y").str() << '\n';
    std::cout << "h = " << unipoly_to_expr(sol.h, "y").str() << '\n';
    JacobiStructure j = build_family_structure(spec, sol);
    std::string emitted = emit_structure_file(j);
    if (out.empty()) {
        std::cout << emitted;
    } else {
        std::ofstream os(out);
        os << emitted;
    }
    Report rep = verify_family_system(spec, sol);
    rep.merge(check_jacobi(j, opt.cfg()));
    print_report(rep, opt);
    return rep.pass() ? kPass : kMathFail;
}

int cmd_examples(const std::string& filter, const Options& opt) {
    int failures = 0, ran = 0;
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& entry : paper_examples()) {
        if (!filter.empty() && entry.name != filter) continue;
        ++ran;
        Report rep = entry.run(opt.cfg());
        if (opt.format == "structured") {
            nlohmann::ordered_json rec;
            rec["example"] = entry.name;
            rec["description"] = entry.description;
            rec["report"] = rep.json();
            doc.push_back(rec);
        } else {
            std::cout << entry.name << ": " << (rep.pass() ? "PASS" : "FAIL")
                      << '\n';
            if (!rep.pass()) std::cout << rep.text();
        }
        if (!rep.pass()) ++failures;
    }
    if (opt.format == "structured") std::cout << doc.dump(2) << '\n';
    if (ran == 0) {
        std::cerr << "no example named '" << filter << "'\n";
        return kPrecondFail;
    }
    return failures == 0 ? kPass : kMathFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Symbolic/numeric toolkit for Jacobi, Poisson and contact structures "
        "on coordinate charts"};
    app.require_subcommand(1);
    Options opt;

    std::string file, src, tgt, map_file, out, f_text, filter;
    int n = 1, m = 1;
    bool slice_roundtrip = false, run_all = false;

    auto* cj = app.add_subcommand("check-jacobi",
                                  "check the Jacobi identities of a structure file");
    cj->add_option("file", file, "structure file")->required();
    add_common_flags(cj, opt);

    auto* cr = app.add_subcommand("check-resolution",
                                  "check a contact-resolution claim");
    cr->add_option("source", src, "source structure file")->required();
    cr->add_option("target", tgt, "target structure file")->required();
    cr->add_option("map", map_file, "map file")->required();
    add_common_flags(cr, opt);

    auto* cp = app.add_subcommand("poissonify",
                                  "emit the homogeneous Poisson structure on (t, ...)");
    cp->add_option("file", file, "structure file")->required();
    cp->add_option("-o,--out", out, "write the emitted structure file here");
    cp->add_flag("--slice-roundtrip", slice_roundtrip,
                 "verify that slicing at t = 0 recovers the input");
    add_common_flags(cp, opt);

    auto* cf = app.add_subcommand("family",
                                  "solve the one-parameter family and build its structure");
    cf->add_option("--f", f_text, "polynomial in y")->required();
    cf->add_option("--n", n, "power n >= 1")->check(CLI::PositiveNumber);
    cf->add_option("--m", m, "ambient dimension 2m+1")->check(CLI::PositiveNumber);
    cf->add_option("-o,--out", out, "write the emitted structure file here");
    add_common_flags(cf, opt);

    auto* ce = app.add_subcommand("examples", "run the named example registry");
    ce->add_flag("--run-all", run_all, "run every entry (default)");
    ce->add_option("--example", filter, "run a single entry by name");
    add_common_flags(ce, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cj->parsed()) return cmd_check_jacobi(file, opt);
        if (cr->parsed()) return cmd_check_resolution(src, tgt, map_file, opt);
        if (cp->parsed()) return cmd_poissonify(file, out, slice_roundtrip, opt);
        if (cf->parsed()) return cmd_family(f_text, n, m, out, opt);
        if (ce->parsed()) return cmd_examples(filter, opt);
    } catch (const FileParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParseFail;
    } catch (const SyntaxError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParseFail;
    } catch (const UnknownIdentifier& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParseFail;
    } catch (const DimensionMismatch& e) {
        std::cerr << e.what() << '\n';
        return kPrecondFail;
    } catch (const EvenDimension& e) {
        std::cerr << e.what() << '\n';
        return kPrecondFail;
    } catch (const NonCoordinateHomothety& e) {
        std::cerr << e.what() << '\n';
        return kPrecondFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kPrecondFail;
    }
    return kPass;
}
