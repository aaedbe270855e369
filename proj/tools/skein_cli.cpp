#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "skein/commands.hpp"
#include "skein/diagram_io.hpp"
#include "skein/selftest.hpp"

using namespace skein;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open file: " + path);
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void emit(const json& report, bool machine) {
    if (machine) std::cout << report.dump(2) << "\n";
    else std::cout << render_human(report);
}

void add_common(CLI::App* sub, JobConfig& cfg, std::string& theory_name_opt,
                std::string& field_name_opt) {
    sub->add_option("--theory", theory_name_opt, "link theory: khovanov, lee, bar-natan")
        ->default_val("khovanov");
    sub->add_option("--field", field_name_opt, "coefficient field: f2, f3, f5, f7, q")
        ->default_val("f2");
    sub->add_option("--crossing-cap", cfg.crossing_cap, "largest allowed crossing count")
        ->default_val(14);
    sub->add_option("--matching-cap", cfg.matching_cap, "largest allowed matching size")
        ->default_val(6);
    sub->add_option("--cable-cap", cfg.cable_cap, "largest allowed cable truncation")
        ->default_val(4);
    sub->add_option("--threads", cfg.threads, "worker threads; output is identical for any value")
        ->default_val(1);
    std::string* fmt = new std::string("human");
    sub->add_option("--format", *fmt, "human or machine")->default_val("human");
    sub->parse_complete_callback([sub, &cfg, fmt, &theory_name_opt, &field_name_opt]() {
        if (*fmt == "machine") cfg.machine = true;
        else if (*fmt != "human") throw CLI::ValidationError("--format must be human or machine");
        if (!parse_theory(theory_name_opt, cfg.theory))
            throw CLI::ValidationError("unknown theory: " + theory_name_opt);
        if (!parse_field(field_name_opt, cfg.field))
            throw CLI::ValidationError("unknown field: " + field_name_opt);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skein: Khovanov-type tangle homology, arc algebras, and handle attachments"};
    app.require_subcommand(1);

    JobConfig cfg;
    std::string theory_opt = "khovanov", field_opt = "f2";
    std::string input, left, right, link, knot, module_path, relations_path;
    int n_arc = 0, framing = 0, max_cable = 2;

    auto* c_kh = app.add_subcommand("kh", "Khovanov-type homology of a closed diagram");
    c_kh->add_option("--input", input, "diagram file")->required();
    add_common(c_kh, cfg, theory_opt, field_opt);

    auto* c_jones = app.add_subcommand("jones", "Kauffman-bracket Jones polynomial");
    c_jones->add_option("--input", input, "diagram file")->required();
    add_common(c_jones, cfg, theory_opt, field_opt);

    auto* c_arc = app.add_subcommand("arc-algebra", "arc algebra H^n");
    c_arc->add_option("--n", n_arc, "matching size")->required();
    add_common(c_arc, cfg, theory_opt, field_opt);

    auto* c_bim = app.add_subcommand("bimodule", "tangle bimodule summands and action ranks");
    c_bim->add_option("--input", input, "tangle file")->required();
    add_common(c_bim, cfg, theory_opt, field_opt);

    auto* c_glue = app.add_subcommand("glue-check", "gluing theorem check");
    c_glue->add_option("--left", left, "(0,n)-tangle file")->required();
    c_glue->add_option("--right", right, "(n,0)-tangle file")->required();
    add_common(c_glue, cfg, theory_opt, field_opt);

    auto* c_h1 = app.add_subcommand("handle1", "1-handle attachment (Hochschild homology)");
    c_h1->add_option("--tangle", input, "(n,n)-tangle file")->required();
    add_common(c_h1, cfg, theory_opt, field_opt);

    auto* c_h2 = app.add_subcommand("handle2", "2-handle attachment (cabled presentation)");
    c_h2->add_option("--link", link, "ambient link file")->required();
    c_h2->add_option("--knot", knot, "companion knot file")->required();
    c_h2->add_option("--framing", framing, "framing integer")->default_val(0);
    c_h2->add_option("--max-cable", max_cable, "cable truncation level")->default_val(2);
    add_common(c_h2, cfg, theory_opt, field_opt);

    auto* c_h3 = app.add_subcommand("handle3", "3-handle attachment (pluggable relations)");
    c_h3->add_option("--module", module_path, "module JSON file")->required();
    c_h3->add_option("--relations", relations_path, "relations JSON file")->required();
    add_common(c_h3, cfg, theory_opt, field_opt);

    auto* c_h4 = app.add_subcommand("handle4", "4-handle attachment (identity)");
    c_h4->add_option("--module", module_path, "module JSON file")->required();
    add_common(c_h4, cfg, theory_opt, field_opt);

    auto* c_self = app.add_subcommand("selftest", "run the acceptance suite");
    add_common(c_self, cfg, theory_opt, field_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_kh->parsed()) {
            emit(cmd_kh(parse_diagram_file(input), cfg), cfg.machine);
        } else if (c_jones->parsed()) {
            emit(cmd_jones(parse_diagram_file(input), cfg), cfg.machine);
        } else if (c_arc->parsed()) {
            emit(cmd_arc_algebra(n_arc, cfg), cfg.machine);
        } else if (c_bim->parsed()) {
            emit(cmd_bimodule(parse_diagram_file(input), cfg), cfg.machine);
        } else if (c_glue->parsed()) {
            emit(cmd_glue_check(parse_diagram_file(left), parse_diagram_file(right), cfg),
                 cfg.machine);
        } else if (c_h1->parsed()) {
            emit(cmd_handle1(parse_diagram_file(input), cfg), cfg.machine);
        } else if (c_h2->parsed()) {
            emit(cmd_handle2(parse_diagram_file(link), parse_diagram_file(knot), framing,
                             max_cable, cfg),
                 cfg.machine);
        } else if (c_h3->parsed()) {
            emit(cmd_handle3(read_json_file(module_path), read_json_file(relations_path), cfg),
                 cfg.machine);
        } else if (c_h4->parsed()) {
            emit(cmd_handle4(read_json_file(module_path), cfg), cfg.machine);
        } else if (c_self->parsed()) {
            auto results = run_acceptance(cfg.threads);
            bool all = true;
            for (const auto& r : results) {
                std::cout << format_acceptance_line(r) << "\n";
                all = all && r.pass;
            }
            return all ? 0 : 1;
        }
    } catch (const CapError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
