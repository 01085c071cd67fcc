// twistcalc: exact calculator for twisted-sheaf generating functions,
// Donaldson series, PSU partition-function assembly, and c2_min bounds.
//
// All outputs are JSON with exact rationals as "p/q" strings; --float adds
// non-authoritative decimal annotations. Identical inputs produce identical
// bytes.

#include <cstdio>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistcalc/twistcalc.hpp"

using namespace twistcalc;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitNoLeadingTerm = 4;

SurfaceData resolve_surface(const std::string& spec) {
    static const std::regex preset_re(R"(mgt_chi(\d+)_k(\d+))");
    std::smatch m;
    if (std::regex_match(spec, m, preset_re))
        return preset_min_general_type(std::stol(m[1]), std::stol(m[2]));
    return load_surface(spec);
}

std::vector<long> parse_vector(const std::string& text) {
    std::vector<long> out;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (cur.empty()) throw ParseError("vector: empty component in \"" + text + "\"");
            out.push_back(std::stol(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

// --w accepts: a comma-separated vector; a single integer t, meaning the
// first class with w.K = t mod r; or odd/even, selecting by the parity of
// the integer pairing w.K.
MuRClass resolve_w(const SurfaceData& s, long r, const std::string& text) {
    if (text == "odd" || text == "even") {
        long want = text == "odd" ? 1 : 0;
        for (const auto& w : enumerate_mu_r(s.lattice, r))
            if (mod_reduce(pair(s.lattice, s.canonical, w.lift()), 2) == want) return w;
        throw ValidationError("no class with w.K parity " + text);
    }
    auto nums = parse_vector(text);
    if (static_cast<long>(nums.size()) == s.lattice.rank) return MuRClass(r, nums);
    if (nums.size() == 1) {
        long t = mod_reduce(nums[0], r);
        for (const auto& w : enumerate_mu_r(s.lattice, r))
            if (pair_mod_r(s.lattice, s.canonical, w) == t) return w;
        throw ValidationError("no class with w.K = " + std::to_string(t) + " mod r");
    }
    throw ParseError("--w: expected a vector of length rank, a single pairing value, or odd/even");
}

LatticeVector resolve_L(const SurfaceData& s, const std::string& text) {
    if (text == "K") return s.canonical;
    auto nums = parse_vector(text);
    if (static_cast<long>(nums.size()) != s.lattice.rank)
        throw ParseError("--L: expected \"K\" or a vector of length rank");
    return LatticeVector(nums.begin(), nums.end());
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json donaldson_json(const SurfaceData& s, long r, const MuRClass& w, const ZSeries& z, bool with_float) {
    json j;
    j["series"] = zseries_to_json(z, with_float);
    int parity = donaldson_vd_parity(s, r, w);
    j["vd_parity"] = parity;
    auto [on, off] = split_parity(z, parity);
    j["off_parity_nonzero"] = !off.is_zero();
    if (!off.is_zero()) j["off_parity"] = zseries_to_json(off, with_float);
    return j;
}

struct SurfaceOptions {
    std::string surface;
    std::string w = "0";
    std::string L = "K";
    long r = 2;
    long z_order = 10;
    long u_degree = 4;
    long q_order = 6;
    bool with_float = false;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculator for twisted-sheaf invariant generating functions"};
    app.require_subcommand(1);

    SurfaceOptions opt;
    std::string pack_path = "unit";
    std::string table_path;
    std::string chern_path;
    std::string c1_text = "0";
    std::string mode = "auto";
    long budget = kDefaultEnumerationBudget;
    long vd_r = 2, vd_c1sq = 0, vd_chi = 1;
    std::string vd_c2 = "0";

    auto add_surface_flags = [&](CLI::App* cmd, bool with_L) {
        cmd->add_option("--surface", opt.surface, "descriptor path or preset mgt_chi<chi>_k<K2>")->required();
        cmd->add_option("--w", opt.w, "mod-r class: vector, pairing value, or odd/even");
        cmd->add_flag("--float", opt.with_float, "annotate output with approximate decimals");
        if (with_L) cmd->add_option("--L", opt.L, "insertion class: \"K\" or a vector");
    };

    auto* gny = app.add_subcommand("gny", "rank-2 Donaldson series from Seiberg-Witten data");
    add_surface_flags(gny, true);
    gny->add_option("--z-order", opt.z_order);
    gny->add_option("--u-degree", opt.u_degree);

    auto* gott = app.add_subcommand("gott", "rank-r Donaldson series from Seiberg-Witten data");
    add_surface_flags(gott, true);
    gott->add_option("--r", opt.r)->required();
    gott->add_option("--z-order", opt.z_order);
    gott->add_option("--u-degree", opt.u_degree);

    auto* gkl = app.add_subcommand("gkl", "twisted Euler-characteristic generating series");
    add_surface_flags(gkl, false);
    gkl->add_option("--r", opt.r)->required();
    gkl->add_option("--pack", pack_path, "universal-series pack path, or \"unit\"");
    gkl->add_option("--q-order", opt.q_order, "full q powers to keep");

    auto* leading = app.add_subcommand("leading", "leading term of the rank-r Donaldson series");
    add_surface_flags(leading, true);
    leading->add_option("--r", opt.r)->required();
    leading->add_option("--z-order", opt.z_order);
    leading->add_option("--u-degree", opt.u_degree);

    auto* bounds = app.add_subcommand("bounds", "c2_min window from the non-emptiness bound and leading terms");
    add_surface_flags(bounds, false);
    bounds->add_option("--r", opt.r)->required();

    auto* psu = app.add_subcommand("psu", "assemble the PSU(r) partition function from per-class series");
    add_surface_flags(psu, false);
    psu->add_option("--r", opt.r)->required();
    psu->add_option("--c1", c1_text, "weighting class c1: vector or single value broadcast")->required();
    psu->add_option("--table", table_path, "per-class series table path")->required();
    psu->add_option("--mode", mode, "brute, reduced, or auto");
    psu->add_option("--budget", budget, "enumeration budget for the brute-force path");

    auto* chern = app.add_subcommand("chern-check", "integrality report for a twisted Chern character");
    add_surface_flags(chern, false);
    chern->add_option("--r", opt.r)->required();
    chern->add_option("--chern", chern_path, "character file with keys rank, c1, ch2")->required();

    auto* vd = app.add_subcommand("vd", "virtual dimension 2 r c2 - (r-1) c1^2 - (r^2-1) chi");
    vd->add_option("--r", vd_r)->required();
    vd->add_option("--c1sq", vd_c1sq)->required();
    vd->add_option("--c2", vd_c2)->required();
    vd->add_option("--chi", vd_chi)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (vd->parsed()) {
            json j;
            j["vd"] = rat_to_string(virtual_dimension(vd_r, vd_c1sq, rat_from_string(vd_c2), vd_chi));
            emit(j);
            return 0;
        }

        SurfaceData s = resolve_surface(opt.surface);
        auto violations = validate(s);
        if (!violations.empty()) throw ValidationError("surface invalid: " + violations.front());

        if (gny->parsed()) {
            auto w = resolve_w(s, 2, opt.w);
            auto z = gny_donaldson(s, w, resolve_L(s, opt.L), opt.u_degree, opt.z_order);
            emit(donaldson_json(s, 2, w, z, opt.with_float));
        } else if (gott->parsed()) {
            auto w = resolve_w(s, opt.r, opt.w);
            auto z = gott_donaldson(s, opt.r, w, resolve_L(s, opt.L), opt.u_degree, opt.z_order);
            emit(donaldson_json(s, opt.r, w, z, opt.with_float));
        } else if (gkl->parsed()) {
            auto w = resolve_w(s, opt.r, opt.w);
            long trunc = opt.q_order * 2 * opt.r;
            UniversalSeriesPack pack =
                pack_path == "unit" ? unit_pack(opt.r, trunc) : pack_from_json(load_json_file(pack_path, "series pack"));
            json j;
            j["residue_mod_2r"] = euler_series_residue(s, opt.r, w);
            j["series"] = qseries_to_json(gkl_euler_series(s, opt.r, w, pack, trunc), opt.with_float);
            emit(j);
        } else if (leading->parsed()) {
            auto w = resolve_w(s, opt.r, opt.w);
            auto z = gott_donaldson(s, opt.r, w, resolve_L(s, opt.L), opt.u_degree, opt.z_order);
            auto lt = leading_term(z);
            json j;
            j["order"] = lt.order;
            j["coefficient"] = upoly_to_json(lt.coefficient, opt.with_float);
            emit(j);
        } else if (bounds->parsed()) {
            auto w = resolve_w(s, opt.r, opt.w);
            emit(c2min_report_to_json(c2min_report(s, opt.r, w)));
        } else if (psu->parsed()) {
            auto table = table_from_json(load_json_file(table_path, "class table"));
            auto c1nums = parse_vector(c1_text);
            LatticeVector c1;
            if (static_cast<long>(c1nums.size()) == s.lattice.rank)
                c1.assign(c1nums.begin(), c1nums.end());
            else if (c1nums.size() == 1)
                c1.assign(s.lattice.rank, c1nums[0]);
            else
                throw ParseError("--c1: expected a vector of length rank or a single value");
            bool reduced = mode == "reduced" || (mode == "auto" && table.collapsed);
            if (mode != "brute" && mode != "reduced" && mode != "auto")
                throw ParseError("--mode: expected brute, reduced, or auto");
            json j;
            j["mode"] = reduced ? "reduced" : "brute";
            j["series"] =
                qseries_to_json(reduced ? psu_reduced(s, opt.r, c1, table) : psu_bruteforce(s, opt.r, c1, table, budget),
                                opt.with_float);
            emit(j);
        } else if (chern->parsed()) {
            auto t = chern_from_json(load_json_file(chern_path, "chern character"), s.lattice);
            auto rep = integrality_check(t, opt.r);
            json j;
            j["c1_integral"] = rep.c1_integral;
            j["c2_integral"] = rep.c2_integral;
            j["c2"] = rat_to_string(rep.c2);
            j["pass"] = rep.pass();
            j["violations"] = rep.violations;
            emit(j);
        }
        return 0;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return kExitBudget;
    } catch (const NoLeadingTerm& e) {
        std::cerr << "no leading term: " << e.what() << "\n";
        return kExitNoLeadingTerm;
    } catch (const ParseError& e) {
        std::cerr << "parse failure: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return kExitValidation;
    }
}
