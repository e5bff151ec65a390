#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "uninorm/certify.hpp"
#include "uninorm/checks.hpp"
#include "uninorm/grid.hpp"

using namespace uninorm;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Common {
    std::string term, term_file;
    bool json = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--term", c.term, "construction term, inline DSL");
    sub->add_option("--term-file", c.term_file, "file holding the term, DSL or JSON");
    sub->add_flag("--json", c.json, "machine readable output");
}

TermPtr load_term(const Common& c) {
    if (!c.term.empty() && !c.term_file.empty())
        throw uninorm::ParseError("give either --term or --term-file, not both");
    if (!c.term.empty())
        return parse_term(c.term);
    if (c.term_file.empty())
        throw uninorm::ParseError("a term is required: --term or --term-file");
    std::ifstream in(c.term_file);
    if (!in)
        throw uninorm::ParseError("cannot open term file: " + c.term_file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    for (char ch : text) {
        if (std::isspace((unsigned char)ch))
            continue;
        if (ch == '{')
            return term_from_json(nlohmann::ordered_json::parse(text));
        break;
    }
    return parse_term(text);
}

uint64_t resolve_seed(const CLI::App* sub, uint64_t flag_value) {
    if (sub->count("--seed"))
        return flag_value;
    if (const char* env = std::getenv("UNINORM_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 0;
}

void emit(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_parse(const Common& c, const std::string& element) {
    TermPtr t = load_term(c);
    require_valid(t);
    Analysis a = analyze(t);
    std::optional<Element> e;
    if (!element.empty())
        e = parse_element(t, element);
    if (c.json) {
        nlohmann::ordered_json j;
        j["term"] = term_to_string(t);
        j["group"] = a.group_part;
        j["leaves"] = t->leaves;
        j["discrete"] = t->disc;
        j["realizable"] = a.realizable;
        if (e)
            j["element"] = element_to_string(t, *e);
        j["tree"] = term_to_json(t);
        emit(j);
        return 0;
    }
    std::cout << "term: " << term_to_string(t) << "\n";
    std::cout << "group: " << a.group_part << "\n";
    std::cout << "leaves: " << t->leaves << "\n";
    std::cout << "discrete: " << (t->disc ? "yes" : "no") << "\n";
    std::cout << "realizable: " << (a.realizable ? "yes" : "no") << "\n";
    if (e)
        std::cout << "element: " << element_to_string(t, *e) << "\n";
    return 0;
}

int cmd_eval(const Common& c, const std::string& op, const std::string& at,
             const std::string& bt, double x, double y, int xy_count) {
    TermPtr t = load_term(c);
    if (xy_count > 0) {
        if (xy_count != 2)
            throw uninorm::ParseError("numeric evaluation needs both --x and --y");
        Realization r(t);
        double v = r.eval(x, y);
        if (c.json) {
            nlohmann::ordered_json j;
            j["term"] = term_to_string(t);
            j["x"] = x;
            j["y"] = y;
            j["value"] = v;
            emit(j);
        } else {
            std::cout << fmt17(v) << "\n";
        }
        return 0;
    }
    require_valid(t);
    auto need_a = [&]() -> Element {
        if (at.empty())
            throw uninorm::ParseError("--a is required for op " + op);
        return parse_element(t, at);
    };
    auto need_b = [&]() -> Element {
        if (bt.empty())
            throw uninorm::ParseError("--b is required for op " + op);
        return parse_element(t, bt);
    };
    std::string result;
    if (op == "unit") {
        result = element_to_string(t, unit(t));
    } else if (op == "neg") {
        result = element_to_string(t, neg(t, need_a()));
    } else if (op == "mul") {
        result = element_to_string(t, mul(t, need_a(), need_b()));
    } else if (op == "res") {
        result = element_to_string(t, res(t, need_a(), need_b()));
    } else if (op == "compare") {
        result = std::to_string(compare(t, need_a(), need_b()));
    } else if (op == "invertible") {
        result = is_invertible(t, need_a()) ? "yes" : "no";
    } else if (op == "idempotent") {
        result = is_idempotent(t, need_a()) ? "yes" : "no";
    } else {
        throw uninorm::ParseError("unknown op: " + op);
    }
    if (c.json) {
        nlohmann::ordered_json j;
        j["term"] = term_to_string(t);
        j["op"] = op;
        if (!at.empty())
            j["a"] = at;
        if (!bt.empty())
            j["b"] = bt;
        j["result"] = result;
        emit(j);
    } else {
        std::cout << result << "\n";
    }
    return 0;
}

int cmd_check(const Common& c, uint64_t samples, uint64_t seed, bool break_neg) {
    TermPtr t = load_term(c);
    SuiteOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    opt.break_negation = break_neg;
    auto results = run_law_suite(t, opt);
    bool ok = true;
    for (const auto& r : results)
        ok = ok && r.ok();
    if (c.json) {
        nlohmann::ordered_json j;
        j["term"] = term_to_string(t);
        j["seed"] = seed;
        j["samples"] = samples;
        j["laws"] = laws_to_json(results);
        j["ok"] = ok;
        emit(j);
    } else {
        std::cout << "term: " << term_to_string(t) << "\n";
        std::cout << "seed: " << seed << "\n";
        std::cout << "samples: " << samples << "\n";
        for (const auto& r : results) {
            std::cout << std::left << std::setw(16) << r.law
                      << (r.ok() ? "PASS" : "FAIL") << "\n";
            if (!r.ok())
                std::cout << "  counterexample: " << r.counterexample << "\n";
        }
        std::cout << "result: " << (ok ? "PASS" : "FAIL") << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_idempotents(const Common& c) {
    TermPtr t = load_term(c);
    require_valid(t);
    Analysis a = analyze(t);
    auto idems = enumerate_idempotents(t);
    if (c.json) {
        nlohmann::ordered_json j;
        j["term"] = term_to_string(t);
        auto arr = nlohmann::ordered_json::array();
        for (const auto& e : idems)
            arr.push_back(element_to_string(t, e));
        j["idempotents"] = arr;
        j["positive"] = a.census.positive;
        j["negative"] = a.census.negative;
        emit(j);
        return 0;
    }
    std::cout << "term: " << term_to_string(t) << "\n";
    for (const auto& e : idems)
        std::cout << element_to_string(t, e) << "\n";
    std::cout << "positive: " << a.census.positive << "\n";
    std::cout << "negative: " << a.census.negative << "\n";
    return 0;
}

std::string path_str(const std::vector<int>& path) {
    if (path.empty())
        return "root";
    std::string s;
    for (size_t i = 0; i < path.size(); ++i) {
        if (i)
            s += ".";
        s += std::to_string(path[i]);
    }
    return s;
}

int cmd_normalize(const Common& c) {
    TermPtr t = load_term(c);
    NormalizeResult r = normalize(t);
    if (c.json) {
        emit(normalize_to_json(t, r));
        return 0;
    }
    std::cout << "term: " << term_to_string(t) << "\n";
    std::cout << "canonical: " << term_to_string(r.canonical) << "\n";
    std::cout << "segments: " << canonical_form_string(r.form) << "\n";
    std::cout << "steps: " << r.trace.size() << "\n";
    for (const auto& s : r.trace)
        std::cout << "  " << rule_name(s.rule)
                  << (s.dir == Dir::LtoR ? " ltr at " : " rtl at ")
                  << path_str(s.path) << "\n";
    return 0;
}

int cmd_certify(const Common& c, uint64_t samples, uint64_t seed) {
    TermPtr t = load_term(c);
    NormalizeResult nr = normalize(t);
    CertificateReport rep = certify_isomorphism(t, nr.canonical, nr.map, samples, seed);
    if (c.json) {
        nlohmann::ordered_json j;
        j["term"] = term_to_string(t);
        j["canonical"] = term_to_string(nr.canonical);
        j["seed"] = seed;
        j["certificate"] = certificate_to_json(rep);
        j["ok"] = rep.ok();
        emit(j);
    } else {
        std::cout << "term: " << term_to_string(t) << "\n";
        std::cout << "canonical: " << term_to_string(nr.canonical) << "\n";
        std::cout << "seed: " << seed << "\n";
        std::cout << "samples: " << rep.samples << "\n";
        std::cout << "violations: " << rep.violations << "\n";
        if (!rep.ok())
            std::cout << "counterexample: " << rep.first_counterexample << "\n";
        for (const auto& n : rep.notes)
            std::cout << "note: " << n << "\n";
        std::cout << "result: " << (rep.ok() ? "PASS" : "FAIL") << "\n";
    }
    return rep.ok() ? 0 : 1;
}

int cmd_grid(const Common& c, int resolution, const std::string& format,
             const std::string& out) {
    TermPtr t = load_term(c);
    Realization r(t);
    Grid g = sample_grid(r, resolution);
    std::ostringstream body;
    if (format == "csv")
        write_csv(body, g);
    else if (format == "pgm")
        write_pgm(body, g);
    else if (format == "json")
        body << grid_to_json(g).dump(2) << "\n";
    else
        throw uninorm::ParseError("unknown format: " + format);
    if (out.empty()) {
        std::cout << body.str();
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f)
        throw DomainError("cannot open output file: " + out);
    f << body.str();
    return 0;
}

int cmd_cover(const Common& c, const std::string& at, bool up) {
    TermPtr t = load_term(c);
    require_valid(t);
    if (at.empty())
        throw uninorm::ParseError("--a is required");
    Element e = parse_element(t, at);
    std::optional<Element> cov = up ? successor(t, e) : predecessor(t, e);
    if (c.json) {
        nlohmann::ordered_json j;
        j["term"] = term_to_string(t);
        j["a"] = element_to_string(t, e);
        j["result"] = cov ? nlohmann::ordered_json(element_to_string(t, *cov))
                          : nlohmann::ordered_json(nullptr);
        emit(j);
        return 0;
    }
    std::cout << (cov ? element_to_string(t, *cov) : std::string("none")) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact engine for group-like uninorms built as partial lexicographic products"};
    app.require_subcommand(1);

    Common c_parse, c_eval, c_check, c_idem, c_norm, c_cert, c_grid, c_succ, c_pred;
    std::string parse_element_text;
    std::string op = "mul", a_text, b_text;
    double xval = 0, yval = 0;
    uint64_t check_samples = 10000, check_seed = 0;
    uint64_t cert_samples = 10000, cert_seed = 0;
    bool break_neg = false;
    int resolution = 64;
    std::string format = "csv", out_path;
    std::string succ_a, pred_a;

    CLI::App* sp = app.add_subcommand("parse", "parse a term, report shape and validity");
    add_common(sp, c_parse);
    sp->add_option("--element", parse_element_text, "element literal to check against the term");

    CLI::App* se = app.add_subcommand("eval", "apply chain operations or the unit square uninorm");
    add_common(se, c_eval);
    se->add_option("--op", op, "unit|neg|mul|res|compare|invertible|idempotent");
    se->add_option("--a", a_text, "first operand element");
    se->add_option("--b", b_text, "second operand element");
    CLI::Option* ox = se->add_option("--x", xval, "unit square coordinate");
    CLI::Option* oy = se->add_option("--y", yval, "unit square coordinate");

    CLI::App* sc = app.add_subcommand("check", "run the randomized law suite");
    add_common(sc, c_check);
    sc->add_option("--samples", check_samples, "samples per law");
    sc->add_option("--seed", check_seed, "sampler seed");
    sc->add_flag("--break-negation", break_neg,
                 "debug: corrupt negation, the suite must fail");

    CLI::App* si = app.add_subcommand("idempotents", "list idempotents and the census");
    add_common(si, c_idem);

    CLI::App* sn = app.add_subcommand("normalize", "rewrite to the canonical layered form");
    add_common(sn, c_norm);

    CLI::App* sy = app.add_subcommand("certify", "sample an isomorphism certificate for the normalization");
    add_common(sy, c_cert);
    sy->add_option("--samples", cert_samples, "sampled pairs");
    sy->add_option("--seed", cert_seed, "sampler seed");

    CLI::App* sg = app.add_subcommand("grid", "export the realized uninorm on a grid");
    add_common(sg, c_grid);
    sg->add_option("--resolution", resolution, "points per axis");
    sg->add_option("--format", format, "csv|pgm|json");
    sg->add_option("--out", out_path, "output file, stdout when absent");

    CLI::App* ss = app.add_subcommand("succ", "cover above an element, if any");
    add_common(ss, c_succ);
    ss->add_option("--a", succ_a, "element literal");

    CLI::App* sd = app.add_subcommand("pred", "cover below an element, if any");
    add_common(sd, c_pred);
    sd->add_option("--a", pred_a, "element literal");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sp->parsed())
            return cmd_parse(c_parse, parse_element_text);
        if (se->parsed())
            return cmd_eval(c_eval, op, a_text, b_text, xval, yval,
                            (int)(ox->count() + oy->count()));
        if (sc->parsed())
            return cmd_check(c_check, check_samples, resolve_seed(sc, check_seed),
                             break_neg);
        if (si->parsed())
            return cmd_idempotents(c_idem);
        if (sn->parsed())
            return cmd_normalize(c_norm);
        if (sy->parsed())
            return cmd_certify(c_cert, cert_samples, resolve_seed(sy, cert_seed));
        if (sg->parsed())
            return cmd_grid(c_grid, resolution, format, out_path);
        if (ss->parsed())
            return cmd_cover(c_succ, succ_a, true);
        if (sd->parsed())
            return cmd_cover(c_pred, pred_a, false);
        return 0;
    } catch (const uninorm::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const MalformedElement& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidTerm& e) {
        std::cerr << "invalid term: " << e.what() << "\n";
        return 3;
    } catch (const NotRealizable& e) {
        std::cerr << "not realizable: " << e.what() << "\n";
        return 3;
    } catch (const NotCanonicalizable& e) {
        std::cerr << "not canonicalizable: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
