// Command-line driver: space classification, packets, descents, first
// occurrence indices, spectra, submodule data, and the randomized
// verification suites.  All input and output is JSON.
//
// Exit codes: 0 success, 1 verification found violations, 2 input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lpdescent/random_case.hpp"
#include "lpdescent/verify.hpp"

using namespace lpdescent;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    json j;
    in >> j;
    return j;
}

void emit(const json& j, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << j.dump(2) << std::endl;
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw std::invalid_argument("cannot open output file '" + output_path + "'");
    out << j.dump(2) << std::endl;
}

CaseFile load_case(const std::string& path) { return io::casefile_from_json(load_json(path)); }

LocalField parse_field_name(const std::string& name) {
    if (name == "real" || name == "R") return LocalField::real();
    return LocalField::p_adic(std::stol(name));
}

json first_occurrence_json(const CaseFile& c, const std::string& mode) {
    EnhancedParameter ep{c.phi, c.mu};
    json j;
    if (mode == "arithmetic" || mode == "both") {
        auto fo = first_occurrence(c.table, c.alphabet, c.group, ep, c.config);
        json a{{"found", fo.found}, {"bound_limited", fo.bound_limited}};
        if (fo.found) {
            a["ell0"] = fo.ell0;
            a["witness"] = io::member_to_json(c.alphabet, *fo.witness);
        }
        if (mode == "arithmetic") return a;
        j["arithmetic"] = a;
    }
    auto fs = spectral_first_occurrence(c.table, c.alphabet, c.group, ep, c.config);
    json s{{"found", fs.found}, {"bound_limited", fs.bound_limited}};
    if (fs.found) {
        s["ell0"] = fs.fs;
        s["spectrum"] = io::spectrum_to_json(c.alphabet, fs.first_spectrum);
    }
    if (mode == "spectral") return s;
    j["spectral"] = s;
    bool equal = j["arithmetic"]["found"] == s["found"] &&
                 (!fs.found || j["arithmetic"]["ell0"] == s["ell0"]);
    j["equal"] = equal;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact descent calculus for enhanced L-parameters of classical groups"};
    app.require_subcommand(1);

    std::string input, output, zclass, mode = "arithmetic", suite = "all",
                family = "Sp", field_name;
    int ell = 0, p1 = 0, max_dim = 0, jobs = 1;
    long cases = 100;
    std::uint64_t seed = 1;

    auto* classify = app.add_subcommand("classify-space", "classify an eps-Hermitian space");
    classify->add_option("--input", input, "case or space JSON file")->required();
    classify->add_option("--output", output, "write JSON here instead of stdout");

    auto* packet = app.add_subcommand("packet", "list the packet attached to the parameter");
    packet->add_option("--input", input)->required();
    packet->add_option("--output", output);

    auto* desc = app.add_subcommand("descend", "compute a descent set");
    desc->add_option("--input", input)->required();
    desc->add_option("--ell", ell, "codimension")->required();
    desc->add_option("--z", zclass, "restrict to one class of Z");
    desc->add_option("--max-dim", max_dim, "cap single-summand dimensions");
    desc->add_option("--output", output);

    auto* fo = app.add_subcommand("first-occurrence", "maximal codimension with nonempty descent");
    fo->add_option("--input", input)->required();
    fo->add_option("--mode", mode, "arithmetic | spectral | both")
        ->check(CLI::IsMember({"arithmetic", "spectral", "both"}));
    fo->add_option("--output", output);

    auto* spec = app.add_subcommand("spectrum", "spectrum along the orbits at p1");
    spec->add_option("--input", input)->required();
    spec->add_option("--p1", p1, "orbit partition head")->required();
    spec->add_option("--output", output);

    auto* sub = app.add_subcommand("submodule", "first-occurrence induction data");
    sub->add_option("--input", input)->required();
    sub->add_option("--output", output);

    auto* verify = app.add_subcommand("verify", "run a randomized verification suite");
    verify->add_option("--suite", suite, "suite name or 'all'");
    verify->add_option("--cases", cases, "number of random cases");
    verify->add_option("--seed", seed, "base seed");
    verify->add_option("--jobs", jobs, "worker threads");
    verify->add_option("--output", output);

    auto* gen = app.add_subcommand("generate-case", "emit a reproducible random case file");
    gen->add_option("--family", family, "SO | Sp | Mp | U");
    gen->add_option("--field", field_name,
                    "residue characteristic or 'real' (default: LPDESCENT_FIELD or rotate)");
    gen->add_option("--seed", seed, "seed");
    gen->add_option("--output", output);

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) {
            json j = load_json(input);
            QuadExt ext = io::ext_from_json(j.at("ext"));
            EpsHermSpace s = io::space_from_json(
                ext, j.contains("space") ? j.at("space") : j.at("group").at("space"));
            auto [r, kernel] = witt_decompose(s);
            json out = io::space_to_json_full(s);
            out["anisotropic_kernel"] = io::space_to_json_full(kernel);
            (void)r;
            emit(out, output);
        } else if (packet->parsed()) {
            CaseFile c = load_case(input);
            auto entries = vogan_packet(c.table, c.alphabet, c.group, c.phi, c.whittaker);
            json arr = json::array();
            for (const auto& e : entries)
                arr.push_back(json{
                    {"mu", io::character_to_json(c.alphabet, e.ep.phi, e.ep.mu)},
                    {"form", e.form_tag},
                    {"quasisplit", e.quasisplit}});
            emit(json{{"order", entries.size()},
                      {"whittaker", c.ext.field().tag(c.whittaker)},
                      {"packet", arr}},
                 output);
        } else if (desc->parsed()) {
            CaseFile c = load_case(input);
            DescentConfig cfg = c.config;
            if (max_dim) cfg.max_summand_dim = max_dim;
            if (!zclass.empty())
                cfg.z_list = {c.ext.normalize(c.ext.field().parse_tag(zclass))};
            DescentSet s = descend(c.table, c.alphabet, c.group, {c.phi, c.mu}, ell, cfg);
            emit(io::descent_set_to_json(c.alphabet, s), output);
        } else if (fo->parsed()) {
            CaseFile c = load_case(input);
            emit(first_occurrence_json(c, mode), output);
        } else if (spec->parsed()) {
            CaseFile c = load_case(input);
            auto r = spectrum_at(c.table, c.alphabet, c.group, {c.phi, c.mu}, p1, c.config);
            emit(io::spectrum_to_json(c.alphabet, r), output);
        } else if (sub->parsed()) {
            CaseFile c = load_case(input);
            auto w = submodule_witness(c.table, c.alphabet, c.group, {c.phi, c.mu}, c.config);
            json out{{"found", w.found}};
            if (w.found) {
                out["p1"] = w.p1;
                out["group"] = io::group_to_json(w.H);
                out["sigma"] = json{
                    {"parameter", io::parameter_to_json(c.alphabet, w.sigma.phi)},
                    {"nu", io::character_to_json(c.alphabet, w.sigma.phi, w.sigma.mu)}};
                out["member"] = io::spectrum_member_to_json(c.alphabet, w.member);
            }
            emit(out, output);
        } else if (verify->parsed()) {
            json reports = json::array();
            bool ok = true;
            std::vector<std::string> names =
                suite == "all" ? suite_names() : std::vector<std::string>{suite};
            for (const auto& name : names) {
                SuiteReport r = run_named_suite(name, seed, cases, jobs);
                ok = ok && r.ok();
                reports.push_back(io::report_to_json(r));
                std::cerr << (r.ok() ? "[pass] " : "[FAIL] ") << name << ": " << r.cases
                          << " cases, " << r.violations.size() << " violations, "
                          << static_cast<long>(r.wall_ms) << " ms" << std::endl;
            }
            emit(names.size() == 1 ? reports[0] : json{{"suites", reports}}, output);
            return ok ? 0 : 1;
        } else if (gen->parsed()) {
            Family fam = io::family_from_name(family);
            LocalField F = LocalField::p_adic(3);
            if (!field_name.empty()) {
                F = parse_field_name(field_name);
            } else if (const char* env = std::getenv("LPDESCENT_FIELD")) {
                F = parse_field_name(env);
            } else {
                SplitMix64 rng(SplitMix64::derive(seed, 0xf1e1dULL));
                F = desk_fields()[rng.below(desk_fields().size())];
            }
            CaseFile c = generate_random_case(fam, F, seed);
            emit(io::casefile_to_json(c), output);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return 0;
}
