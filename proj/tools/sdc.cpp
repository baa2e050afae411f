// Command-line front end: weight enumerators, Clifford-Weil groups, Molien
// series, Gleason decompositions and span checks over exact arithmetic.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdc/sdc.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailed = 1,
    kParse = 2,
    kBudget = 3,
    kCap = 4,
    kNoRepresentation = 5,
    kInfeasible = 6,
};

struct Global {
    int jobs = 1;
    bool json = false;
    std::string output;
};

/// Either --preset NAME or --form-ring FILE.
struct TypeSource {
    std::string preset;
    std::string file;

    void attach(CLI::App* cmd) {
        auto* p = cmd->add_option("--preset", preset, "Built-in Type (see 'presets list')");
        auto* f = cmd->add_option("--form-ring", file, "Form-ring document (JSON)");
        p->excludes(f);
    }
    [[nodiscard]] bool given() const { return !preset.empty() || !file.empty(); }
    [[nodiscard]] sdc::FormRing load() const {
        if (!preset.empty()) return sdc::preset(preset);
        if (file.empty()) throw sdc::ParseError("one of --preset or --form-ring is required");
        return sdc::read_form_ring(sdc::read_json_file(file));
    }
};

sdc::Json load_document(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return sdc::parse_json(ss.str(), "stdin");
    }
    return sdc::read_json_file(path);
}

/// "0|1,3,5,7|2,4,6,8": blocks separated by '|', variable ids by ','.
std::vector<std::vector<int>> parse_partition(const std::string& text) {
    std::vector<std::vector<int>> blocks;
    std::stringstream ss(text);
    std::string block;
    while (std::getline(ss, block, '|')) {
        std::vector<int> ids;
        std::stringstream bs(block);
        std::string item;
        while (std::getline(bs, item, ',')) {
            std::size_t used = 0;
            int v = -1;
            try {
                v = std::stoi(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
            if (used != item.size() || v < 0) throw sdc::ParseError("partition: '" + item + "' is not a variable id");
            ids.push_back(v);
        }
        if (ids.empty()) throw sdc::ParseError("partition: empty block");
        blocks.push_back(std::move(ids));
    }
    if (blocks.empty()) throw sdc::ParseError("partition: no blocks");
    return blocks;
}

/// Orbits of V^m under v -> -v, in order of first element.
std::vector<std::vector<int>> sign_orbits(const sdc::Module& V, int m) {
    const int n = V.size();
    int count = 1;
    for (int i = 0; i < m; ++i) count *= n;
    std::vector<int> seen(static_cast<std::size_t>(count), 0);
    std::vector<std::vector<int>> blocks;
    for (int x = 0; x < count; ++x) {
        if (seen[static_cast<std::size_t>(x)]) continue;
        int y = 0, rest = x, scale = 1;
        for (int i = 0; i < m; ++i, rest /= n, scale *= n) y += V.neg[static_cast<std::size_t>(rest % n)] * scale;
        blocks.push_back({x});
        seen[static_cast<std::size_t>(x)] = 1;
        if (!seen[static_cast<std::size_t>(y)]) {
            blocks.back().push_back(y);
            seen[static_cast<std::size_t>(y)] = 1;
        }
    }
    return blocks;
}

class Output {
public:
    explicit Output(const Global& g) : g_(g) {}
    void text(const std::string& s) { buffer_ << s << "\n"; }
    void json(const sdc::Json& j) { buffer_ << sdc::dump_document(j); }
    void emit(const sdc::Json& j, const std::string& s) {
        if (g_.json)
            json(j);
        else
            text(s);
    }
    void flush() {
        if (g_.output.empty()) {
            std::cout << buffer_.str();
            return;
        }
        std::ofstream out(g_.output, std::ios::binary);
        if (!out) throw sdc::ParseError(g_.output + ": cannot write file");
        out << buffer_.str();
    }

private:
    const Global& g_;
    std::ostringstream buffer_;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string matrix_rows(const sdc::CycMatrix& M) {
    std::string out;
    for (int r = 0; r < M.dim(); ++r) {
        std::vector<std::string> row;
        for (int c = 0; c < M.dim(); ++c) row.push_back(M(r, c).to_string());
        out += "  [" + join(row, ", ") + "]\n";
    }
    return out;
}

std::string code_rows(const sdc::Code& c) {
    std::string out;
    const auto& labels = c.form_ring().module.labels;
    for (std::size_t r = 0; r < c.generators().size(); ++r) {
        std::vector<std::string> cells;
        for (int x : c.generators()[r]) cells.push_back(labels[static_cast<std::size_t>(x)]);
        out += join(cells, " ") + (r + 1 < c.generators().size() ? "\n" : "");
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact toolkit for self-dual codes: weight enumerators, Clifford-Weil groups, Molien series"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--jobs,-j", g.jobs, "Worker threads (does not change any output)")->check(CLI::PositiveNumber);
    app.add_flag("--json", g.json, "Print the structured document instead of text");
    app.add_option("--output,-o", g.output, "Write the result to a file");

    // wenum
    auto* wenum = app.add_subcommand("wenum", "Weight enumerator of a code document");
    std::string wenum_file, wenum_kind = "cwe", wenum_partition;
    int wenum_genus = 1;
    wenum->add_option("code", wenum_file, "Code document ('-' for stdin)")->required();
    wenum->add_option("--kind", wenum_kind, "cwe, swe (v and -v merged) or hwe")->check(CLI::IsMember({"cwe", "swe", "hwe"}));
    wenum->add_option("--genus,-m", wenum_genus, "Genus m")->check(CLI::Range(1, 8));
    wenum->add_option("--partition", wenum_partition, "Merge cwe variables, e.g. '0|1,3|2'");

    // dual
    auto* dual = app.add_subcommand("dual", "Dual code, or MacWilliams transform of a Hamming enumerator");
    std::string dual_file, dual_poly;
    long dual_q = 0, dual_size = 0;
    auto* dual_code_opt = dual->add_option("code", dual_file, "Code document ('-' for stdin)");
    auto* dual_poly_opt = dual->add_option("--poly", dual_poly, "Hamming enumerator in x, y");
    dual->add_option("--q", dual_q, "Alphabet size")->needs(dual_poly_opt);
    dual->add_option("--size", dual_size, "Number of codewords |C|")->needs(dual_poly_opt);
    dual_code_opt->excludes(dual_poly_opt);

    // cwgroup
    auto* cwgroup = app.add_subcommand("cwgroup", "Clifford-Weil group of a Type");
    TypeSource cw_src;
    cw_src.attach(cwgroup);
    int cw_genus = 1;
    bool cw_order_only = false, cw_emit_gens = false, cw_emit_elements = false;
    std::uint64_t cw_cap = 1000000;
    std::string cw_partition;
    cwgroup->add_option("--genus,-m", cw_genus, "Genus m")->check(CLI::Range(1, 8));
    cwgroup->add_flag("--order-only", cw_order_only, "Print only the order");
    cwgroup->add_flag("--emit-generators", cw_emit_gens, "Print the generator matrices");
    cwgroup->add_flag("--emit-elements", cw_emit_elements, "Print every group element");
    cwgroup->add_option("--cap", cw_cap, "Largest order the closure may reach");
    cwgroup->add_option("--partition", cw_partition, "Collapse the variables onto blocks first");

    // molien
    auto* molien = app.add_subcommand("molien", "Molien series of a Clifford-Weil group or a matrix group");
    TypeSource mo_src;
    mo_src.attach(molien);
    std::string mo_group, mo_partition;
    int mo_genus = 1;
    std::optional<std::size_t> mo_truncate;
    bool mo_exact = false;
    std::uint64_t mo_cap = 1000000;
    molien->add_option("--group", mo_group, "Group document with generator matrices");
    molien->add_option("--genus,-m", mo_genus, "Genus m")->check(CLI::Range(1, 8));
    molien->add_option("--truncate", mo_truncate, "Coefficients up to this degree");
    molien->add_flag("--exact", mo_exact, "Closed rational function (the default)");
    molien->add_option("--cap", mo_cap, "Largest order the closure may reach");
    molien->add_option("--partition", mo_partition, "Collapse the variables onto blocks first");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "Write a two-variable enumerator in the Gleason basis f, g");
    std::string de_file, de_poly, de_type;
    auto* de_file_opt = decompose->add_option("polynomial", de_file, "Polynomial document ('-' for stdin)");
    auto* de_poly_opt = decompose->add_option("--poly", de_poly, "Polynomial in x, y, e.g. 'x^2 + y^2'");
    de_file_opt->excludes(de_poly_opt);
    decompose->add_option("--type", de_type, "I, II, III or IV")->required()->check(CLI::IsMember({"I", "II", "III", "IV"}));

    // verify-span
    auto* span = app.add_subcommand("verify-span", "Rank of genus-m enumerators against the Molien coefficient");
    TypeSource sp_src;
    sp_src.attach(span);
    int sp_length = 0, sp_genus = 1;
    bool sp_allow_large = false;
    span->add_option("--length,-N", sp_length, "Code length N")->required()->check(CLI::Range(0, 64));
    span->add_option("--genus,-m", sp_genus, "Genus m")->check(CLI::Range(1, 8));
    span->add_flag("--allow-large", sp_allow_large, "Permit enumeration beyond |V| <= 3, N <= 12");

    // qr-code
    auto* qr = app.add_subcommand("qr-code", "Extended binary quadratic-residue code");
    int qr_p = 7;
    qr->add_option("--p", qr_p, "Prime p = 7 mod 8")->required();

    // presets
    auto* presets = app.add_subcommand("presets", "Built-in Types");
    presets->require_subcommand(1);
    auto* presets_list = presets->add_subcommand("list", "List the built-in Types");
    auto* presets_export = presets->add_subcommand("export", "Print a built-in Type as a form-ring document");
    std::string export_name;
    presets_export->add_option("name", export_name, "Preset name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    Output out(g);
    int status = kOk;
    try {
        sdc::ClosureOptions closure;
        closure.jobs = g.jobs;
        sdc::MolienOptions mopt;
        mopt.jobs = g.jobs;

        if (*wenum) {
            const sdc::Code code = sdc::read_code(load_document(wenum_file));
            sdc::WeightPolynomial w;
            if (wenum_kind == "hwe") {
                if (wenum_genus != 1 || !wenum_partition.empty()) throw sdc::ParseError("hwe takes neither --genus nor --partition");
                w = sdc::hwe(code);
            } else if (wenum_kind == "swe") {
                if (!wenum_partition.empty()) throw sdc::ParseError("swe takes no --partition");
                w = sdc::symmetrize(sdc::cwe(code, wenum_genus), sign_orbits(code.form_ring().module, wenum_genus));
            } else {
                w = sdc::cwe(code, wenum_genus);
                if (!wenum_partition.empty()) w = sdc::symmetrize(w, parse_partition(wenum_partition));
            }
            out.emit(sdc::polynomial_json(w), w.to_string());
        } else if (*dual) {
            if (!dual_poly.empty()) {
                if (dual_q < 2 || dual_size < 1) throw sdc::ParseError("--poly needs --q >= 2 and --size >= 1");
                const auto w = sdc::parse_polynomial(dual_poly, {"x", "y"});
                const auto d = sdc::macwilliams_dual(w, dual_q, dual_size);
                out.emit(sdc::polynomial_json(d), d.to_string());
            } else {
                if (dual_file.empty()) throw sdc::ParseError("dual needs a code document or --poly");
                const sdc::Code code = sdc::read_code(load_document(dual_file));
                const sdc::Code d = sdc::dual_code(code);
                sdc::Json j = sdc::detail::header("dual");
                j["size"] = d.size();
                j["code"] = sdc::code_json(d);
                j["hwe"] = sdc::polynomial_json(sdc::hwe(d));
                out.emit(j, code_rows(d) + "\nhwe: " + sdc::hwe(d).to_string() + "\nsize: " + std::to_string(d.size()));
            }
        } else if (*cwgroup) {
            closure.cap = cw_cap;
            const sdc::FormRing rho = cw_src.load();
            std::vector<sdc::Generator> gens = sdc::clifford_weil_generators(cw_genus == 1 ? rho : sdc::genus_lift(rho, cw_genus));
            if (gens.empty()) gens.push_back({"identity", sdc::CycMatrix::identity(rho.module.size())});
            if (!cw_partition.empty()) gens = sdc::collapse_group(gens, parse_partition(cw_partition));
            const sdc::MatrixGroup G = sdc::group_closure(gens, closure);
            const bool with_gens = cw_emit_gens && !cw_order_only, with_els = cw_emit_elements && !cw_order_only;
            std::string text = cw_order_only ? std::to_string(G.order()) : "dimension " + std::to_string(G.dimension()) + "\norder " + std::to_string(G.order());
            if (with_gens)
                for (const auto& gen : G.generators()) text += "\n" + gen.label + ":\n" + matrix_rows(gen.matrix);
            if (with_els)
                for (std::size_t i = 0; i < G.order(); ++i) text += "\nelement " + std::to_string(i) + ":\n" + matrix_rows(G.element(i));
            while (!text.empty() && text.back() == '\n') text.pop_back();
            out.emit(sdc::group_json(G, with_gens, with_els), text);
        } else if (*molien) {
            closure.cap = mo_cap;
            std::vector<sdc::Generator> gens;
            if (!mo_group.empty()) {
                if (mo_src.given()) throw sdc::ParseError("--group excludes --preset and --form-ring");
                if (mo_genus != 1) throw sdc::ParseError("--genus applies to Types, not to --group");
                gens = sdc::read_group_generators(load_document(mo_group));
            } else {
                const sdc::FormRing rho = mo_src.load();
                gens = sdc::clifford_weil_generators(mo_genus == 1 ? rho : sdc::genus_lift(rho, mo_genus));
                if (gens.empty()) gens.push_back({"identity", sdc::CycMatrix::identity(rho.module.size())});
            }
            if (!mo_partition.empty()) gens = sdc::collapse_group(gens, parse_partition(mo_partition));
            const sdc::MatrixGroup G = sdc::group_closure(gens, closure);
            const auto classes = sdc::trace_classes(G, mopt);
            std::vector<sdc::Rational> coeffs;
            if (mo_truncate) coeffs = sdc::molien_coeffs(classes, G.order(), *mo_truncate);
            std::optional<sdc::RationalFunction> series;
            if (mo_exact || !mo_truncate) series = sdc::molien_series(classes, G.order(), mopt);
            std::vector<std::string> lines;
            if (!coeffs.empty()) {
                std::vector<std::string> cs;
                for (const auto& c : coeffs) cs.push_back(c.get_str());
                lines.push_back(join(cs, ", "));
            }
            if (series) lines.push_back(series->to_string());
            out.emit(sdc::molien_json(G.order(), G.dimension(), coeffs, series), join(lines, "\n"));
        } else if (*decompose) {
            sdc::WeightPolynomial w;
            if (!de_poly.empty())
                w = sdc::parse_polynomial(de_poly, {"x", "y"});
            else if (!de_file.empty())
                w = sdc::read_polynomial(load_document(de_file));
            else
                throw sdc::ParseError("decompose needs a polynomial document or --poly");
            const auto d = sdc::gleason_decompose(w, sdc::gleason_basis(de_type));
            out.emit(sdc::decomposition_json(de_type, w, d), d.to_string());
        } else if (*span) {
            const sdc::FormRing rho = sp_src.load();
            sdc::SpanOptions opt;
            opt.closure.jobs = g.jobs;
            opt.molien.jobs = g.jobs;
            opt.enumerate.allow_large = sp_allow_large;
            const sdc::SpanReport r = sdc::verify_span(rho, sp_length, sp_genus, opt);
            std::string text = rho.label + " N=" + std::to_string(r.length) + " m=" + std::to_string(r.genus) + ": " +
                               (r.pass() ? "pass" : "FAIL") + ", rank " + std::to_string(r.rank) +
                               (r.pass() ? " = " : " != ") + "molien " + r.molien.get_str() + ", codes " + std::to_string(r.codes);
            if (r.classes) text += ", classes " + std::to_string(*r.classes);
            text += ", group order " + std::to_string(r.group_order);
            if (!r.witnesses.empty()) text += ", witnesses " + join(r.witnesses, "; ");
            out.emit(sdc::span_report_json(r), text);
            if (!r.pass()) status = kFailed;
        } else if (*qr) {
            const sdc::Code c = sdc::extended_qr_code(qr_p);
            out.emit(sdc::code_json(c, "qr" + std::to_string(qr_p + 1)), code_rows(c));
        } else if (*presets_list) {
            sdc::Json j = sdc::detail::header("preset_list");
            sdc::Json items = sdc::Json::array();
            std::string text;
            for (const auto& name : sdc::preset_names()) {
                const sdc::FormRing rho = sdc::preset(name);
                items.push_back(sdc::Json{{"name", name}, {"ring_size", rho.ring_labels.size()}, {"alphabet_size", rho.module.size()}, {"level", rho.level}});
                text += (text.empty() ? "" : "\n") + name + "\t|R|=" + std::to_string(rho.ring_labels.size()) +
                        " |V|=" + std::to_string(rho.module.size()) + " level=" + std::to_string(rho.level);
            }
            j["presets"] = items;
            out.emit(j, text);
        } else if (*presets_export) {
            out.json(sdc::form_ring_json(sdc::preset(export_name)));
        }
        out.flush();
    } catch (const sdc::CapExceeded& e) {
        std::cerr << "error: " << e.what() << " (partial count " << e.partial() << ")\n";
        return kCap;
    } catch (const sdc::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const sdc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const sdc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const sdc::NoRepresentation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNoRepresentation;
    } catch (const sdc::Infeasible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const sdc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return status;
}
