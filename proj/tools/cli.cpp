#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "strata/aas.hpp"
#include "strata/firstorder.hpp"
#include "strata/generate.hpp"
#include "strata/graphs.hpp"
#include "strata/semantics.hpp"

namespace strata::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Config {
    std::string input = "-";
    std::string format = "text";
    std::string engine = "auto";
    bool strict_convert = false;
    std::string nogoods_file;
    std::size_t max_brute_atoms = kDefaultBruteForceCap;
    std::uint64_t seed = 1;
    bool parallel = false;

    // per subcommand
    bool one = false;
    bool guided = false;
    std::string dot_file;
    std::string model_file;
    std::string query_atom;
    std::string mode = "cautious";
    std::string generator = "mixed";
    std::size_t bench_atoms = 10;
    std::size_t bench_instances = 50;
    std::size_t bench_rules = 0;  // 0: twice the atom count
    std::size_t max_guess_bits = 20;
    std::string csv_file;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string read_input(const Config& c, std::istream& in) {
    if (c.input.empty() || c.input == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return read_file(c.input);
}

// Propositional atoms never carry parentheses, so any '(' outside a comment
// marks first-order input.
bool looks_first_order(std::string_view text) {
    bool comment = false;
    for (char ch : text) {
        if (ch == '\n') comment = false;
        else if (ch == '%') comment = true;
        else if (ch == '(' && !comment) return true;
    }
    return false;
}

AasOptions aas_options(const Config& c) {
    AasOptions o;
    o.engine = parse_engine(c.engine);
    o.strict_convert = c.strict_convert;
    o.policy.parallel = c.parallel;
    o.brute_cap = c.max_brute_atoms;
    return o;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

void print_models(std::ostream& out, const std::vector<std::vector<std::string>>& models) {
    for (const auto& m : models) out << join(m, " ") << '\n';
}

ParsedProgram load_propositional(const Config& c, const std::string& text, std::ostream& err) {
    auto parsed = parse_program(text);
    for (const auto& w : parsed.warnings) err << "warning: " << w.line << ':' << w.column << ": " << w.message << '\n';
    if (!c.nogoods_file.empty()) {
        const auto extra = parse_program(read_file(c.nogoods_file));
        const auto& names = extra.kb.atoms();
        for (const auto& ng : extra.nogoods) {
            Nogood mapped;
            bool known = true;
            for (AtomId a : ng.atoms) {
                auto id = parsed.kb.atoms().find(names.name(a));
                if (!id) {
                    err << "warning: nogood atom '" << names.name(a) << "' does not occur in the program; nogood dropped\n";
                    known = false;
                    break;
                }
                mapped.atoms.push_back(*id);
            }
            if (!known) continue;
            std::sort(mapped.atoms.begin(), mapped.atoms.end());
            parsed.nogoods.push_back(std::move(mapped));
        }
    }
    return parsed;
}

Json omega_json(const KnowledgeBase& kb, const SuperGraph& sg, const OmegaIndex& om, const AasResult* r) {
    Json nodes = Json::array();
    for (std::size_t i = 0; i < sg.size(); ++i) {
        Json n;
        std::vector<std::string> atoms;
        for (auto a : sg.nodes[i].members) atoms.push_back(kb.atoms().name(a));
        n["atoms"] = atoms;
        n["k"] = om.nodes[i].k;
        n["c"] = om.nodes[i].c;
        n["v"] = om.nodes[i].v;
        n["t"] = om.nodes[i].t;
        if (r) {
            const auto& st = r->nodes[i];
            n["engine"] = st.evaluated ? std::string(engine_name(st.engine)) : std::string();
            n["candidates"] = st.candidates;
            n["models"] = st.models;
        }
        nodes.push_back(std::move(n));
    }
    return nodes;
}

int solve_propositional(const Config& c, const std::string& text, std::ostream& out, std::ostream& err) {
    const auto parsed = load_propositional(c, text, err);
    const auto& kb = parsed.kb;
    const auto opts = aas_options(c);

    if (c.one) {
        auto m = solve_one(kb, opts);
        if (!m) {
            out << "no stable model\n";
            return kNegative;
        }
        std::vector<std::string> names;
        for (AtomId a : m->true_atoms()) names.push_back(kb.atoms().name(a));
        std::sort(names.begin(), names.end());
        if (c.format == "json") {
            Json j;
            j["models"] = Json::array({names});
            out << j.dump(2) << '\n';
        } else {
            print_models(out, {names});
        }
        return kOk;
    }

    const auto r = aas_solve(kb, parsed.nogoods, opts);
    const auto models = true_names(r.models, kb.atoms());
    if (c.format == "json") {
        const auto sg = build_super_graph(kb);
        Json j;
        j["models"] = models;
        j["count"] = models.size();
        j["t_pi"] = r.omega.t_pi;
        j["saturated"] = r.omega.saturated;
        j["stratified"] = is_stratified(kb);
        j["nodes"] = omega_json(kb, sg, r.omega, &r);
        out << j.dump(2) << '\n';
    } else if (models.empty()) {
        out << "no stable model\n";
    } else {
        print_models(out, models);
    }
    return models.empty() ? kNegative : kOk;
}

fo::Program load_first_order(const Config& c, std::string text) {
    if (!c.nogoods_file.empty()) text += "\n" + read_file(c.nogoods_file);
    return fo::parse_program(text);
}

int solve_first_order(const Config& c, const std::string& text, std::ostream& out) {
    const auto prog = load_first_order(c, text);
    fo::FaasOptions opts;
    opts.aas = aas_options(c);
    opts.grounding.guided = c.guided;
    const auto r = fo::faas_solve(prog, opts);
    auto models = fo::model_names(r);
    if (c.one && models.size() > 1) models.resize(1);
    if (c.format == "json") {
        Json j;
        j["models"] = models;
        j["count"] = models.size();
        Json nodes = Json::array();
        for (const auto& n : r.nodes) {
            Json x;
            x["predicates"] = n.predicates;
            x["candidates"] = n.candidates;
            x["models"] = n.models;
            x["ground_rules"] = n.ground_rules;
            x["stratified_fragment"] = n.stratified_fragment;
            nodes.push_back(std::move(x));
        }
        j["nodes"] = nodes;
        out << j.dump(2) << '\n';
    } else if (models.empty()) {
        out << "no stable model\n";
    } else {
        print_models(out, models);
    }
    return models.empty() ? kNegative : kOk;
}

int cmd_solve(const Config& c, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto text = read_input(c, in);
    if (looks_first_order(text)) return solve_first_order(c, text, out);
    return solve_propositional(c, text, out, err);
}

std::string omega_name(const OmegaIndex& om) {
    std::string s = "Ω_" + std::to_string(om.t_pi);
    if (om.saturated) s += " (saturated)";
    return s;
}

int cmd_classify(const Config& c, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto parsed = load_propositional(c, read_input(c, in), err);
    const auto& kb = parsed.kb;
    const auto sg = build_super_graph(kb);
    const auto om = omega_index(kb, sg);
    const bool stratified = is_stratified(kb);

    if (!c.dot_file.empty()) {
        std::ofstream f(c.dot_file);
        if (!f) throw UsageError("cannot write '" + c.dot_file + "'");
        f << to_dot(sg, kb.atoms().names());
    }
    if (c.format == "json") {
        Json j;
        j["t_pi"] = om.t_pi;
        j["saturated"] = om.saturated;
        j["stratified"] = stratified;
        j["nodes"] = omega_json(kb, sg, om, nullptr);
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << omega_name(om) << (stratified ? " (stratified)" : "") << '\n';
    out << std::left << std::setw(24) << "node" << std::right << std::setw(6) << "k" << std::setw(6) << "c"
        << std::setw(12) << "v" << std::setw(12) << "t" << '\n';
    for (std::size_t i = 0; i < sg.size(); ++i) {
        const auto& n = om.nodes[i];
        out << std::left << std::setw(24) << component_label(sg.nodes[i], kb.atoms().names()) << std::right
            << std::setw(6) << n.k << std::setw(6) << n.c << std::setw(12) << n.v << std::setw(12) << n.t << '\n';
    }
    return kOk;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    bool comment = false;
    for (char ch : text + "\n") {
        if (ch == '\n') comment = false;
        if (comment) continue;
        if (ch == '%') {
            comment = true;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '{' || ch == '}') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

int cmd_check(const Config& c, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto parsed = load_propositional(c, read_input(c, in), err);
    const auto& kb = parsed.kb;
    std::vector<AtomId> s;
    for (const auto& name : split_names(read_file(c.model_file))) {
        auto id = kb.atoms().find(name);
        if (!id) throw UsageError("unknown atom '" + name + "' in candidate model");
        s.push_back(*id);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    const auto v = explain_stability(kb, s);
    if (v.stable) {
        out << "stable\n";
        return kOk;
    }
    out << "not stable";
    if (v.unsatisfied_rule) out << ": unsatisfied rule " << render_rule(kb.atoms(), kb.rules()[*v.unsatisfied_rule]);
    else if (v.unproved_atom) out << ": no proof of " << kb.atoms().name(*v.unproved_atom);
    out << '\n';
    return kNegative;
}

int cmd_query(const Config& c, std::istream& in, std::ostream& out, std::ostream& err) {
    auto parsed = load_propositional(c, read_input(c, in), err);
    auto& kb = parsed.kb;
    QueryMode mode;
    if (c.mode == "cautious") mode = QueryMode::Cautious;
    else if (c.mode == "brave") mode = QueryMode::Brave;
    else throw UsageError("unknown query mode '" + c.mode + "'");
    // an atom the program never mentions is simply false everywhere
    const auto atom = kb.intern(c.query_atom);
    const auto r = query_atom(kb, atom, mode, aas_options(c));
    if (c.format == "json") {
        Json j;
        j["atom"] = c.query_atom;
        j["mode"] = c.mode;
        j["answer"] = r.answer;
        j["early_stop"] = r.early_stop;
        j["nodes_evaluated"] = r.nodes_evaluated;
        j["total_nodes"] = r.total_nodes;
        out << j.dump(2) << '\n';
    } else {
        out << (r.answer ? "yes" : "no");
        if (r.early_stop) out << " (early stop after " << r.nodes_evaluated << " of " << r.total_nodes << " nodes)";
        out << '\n';
    }
    return r.answer ? kOk : kNegative;
}

int cmd_ground(const Config& c, std::istream& in, std::ostream& out) {
    const auto prog = load_first_order(c, read_input(c, in));
    if (!c.guided)
        if (auto v = fo::check_safe(prog); !v.empty()) throw fo::UnsafeProgram(std::move(v));
    const auto kb = fo::ground(prog, {c.guided});
    out << render(kb);
    for (const auto& ng : prog.nogoods) {
        out << "#nogood";
        for (const auto& a : ng) out << ' ' << prog.atom_name(a);
        out << ".\n";
    }
    return kOk;
}

// Wall-clock milliseconds of f(), or a negative value when f throws CapExceeded.
template <class F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        f();
    } catch (const CapExceeded&) {
        return -1;
    }
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string cell(double ms) {
    if (ms < 0) return "-";
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(3) << ms;
    return ss.str();
}

int cmd_bench(const Config& c, std::ostream& out) {
    gen::Rng rng(c.seed);
    const ExecPolicy policy{c.parallel};
    AasOptions opts;
    opts.policy = policy;

    std::ofstream csv;
    if (!c.csv_file.empty()) {
        csv.open(c.csv_file);
        if (!csv) throw UsageError("cannot write '" + c.csv_file + "'");
        csv << "instance,atoms,rules,length,t_pi,models,brute_ms,as1_ms,as2_ms,aas_ms\n";
    }
    out << std::setw(5) << "inst" << std::setw(7) << "atoms" << std::setw(7) << "rules" << std::setw(14) << "t_pi"
        << std::setw(8) << "models" << std::setw(12) << "brute_ms" << std::setw(12) << "as1_ms" << std::setw(12)
        << "as2_ms" << std::setw(12) << "aas_ms" << '\n';

    std::size_t compared = 0, aas_wins = 0;
    if (c.bench_atoms == 0) return kOk;
    const auto rules = c.bench_rules ? c.bench_rules : 2 * c.bench_atoms;
    for (std::size_t i = 0; i < c.bench_instances; ++i) {
        KnowledgeBase kb;
        if (c.generator == "layered") {
            gen::LayeredParams p;
            p.atoms = c.bench_atoms;
            kb = gen::layered_program(rng, p);
        } else if (c.generator == "mixed") {
            gen::MixedParams p;
            p.atoms = c.bench_atoms;
            p.rules = rules;
            kb = gen::mixed_program(rng, p);
        } else {
            throw UsageError("unknown generator '" + c.generator + "'");
        }
        std::size_t count = 0;
        std::uint64_t t_pi = 0;
        double brute = -1;
        if (kb.atom_count() <= c.max_brute_atoms)
            brute = time_ms([&] { brute_force_stable_models(kb, c.max_brute_atoms, policy); });
        const auto k = negated_atoms(kb.view()).size();
        const auto width = std::min(k, non_horn_rules(kb.view()).size());
        const double as1 = k <= c.max_guess_bits ? time_ms([&] { all_stable1(kb, policy); }) : -1;
        const double as2 = width <= c.max_guess_bits ? time_ms([&] { all_stable2(kb, policy); }) : -1;
        const double aas = time_ms([&] {
            auto r = aas_solve(kb, {}, opts);
            count = r.models.size();
            t_pi = r.omega.t_pi;
        });
        if (brute >= 0 && aas >= 0) {
            ++compared;
            if (aas <= brute) ++aas_wins;
        }
        out << std::setw(5) << i << std::setw(7) << kb.atom_count() << std::setw(7) << kb.rules().size()
            << std::setw(14) << t_pi << std::setw(8) << count << std::setw(12) << cell(brute) << std::setw(12)
            << cell(as1) << std::setw(12) << cell(as2) << std::setw(12) << cell(aas) << '\n';
        if (csv.is_open())
            csv << i << ',' << kb.atom_count() << ',' << kb.rules().size() << ',' << kb.length() << ',' << t_pi << ','
                << count << ',' << cell(brute) << ',' << cell(as1) << ',' << cell(as2) << ',' << cell(aas) << '\n';
    }
    if (compared) out << "aas <= brute on " << aas_wins << " of " << compared << " instances\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stable model solver with tractability classification", "strata"};
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* sub) {
        sub->add_option("input", c.input, "program file, '-' for standard input");
        sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--engine", c.engine, "per-component enumerator")
            ->check(CLI::IsMember({"auto", "as1", "as2", "brute"}));
        sub->add_flag("--strict-convert", c.strict_convert, "keep rules with a false child atom in the positive body");
        sub->add_option("--nogoods-from-file", c.nogoods_file, "extra #nogood statements");
        sub->add_option("--max-brute-atoms", c.max_brute_atoms, "atom limit for brute-force enumeration")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--parallel", c.parallel, "evaluate independent work concurrently");
    };

    auto* solve = app.add_subcommand("solve", "print every stable model");
    common(solve);
    solve->add_flag("--one", c.one, "stop after the first stable model");
    solve->add_flag("--guided", c.guided, "first-order input: ground only possibly derivable instances");

    auto* classify = app.add_subcommand("classify", "report the Ω class and per-component costs");
    common(classify);
    classify->add_option("--dot", c.dot_file, "write the component graph in DOT format");

    auto* check = app.add_subcommand("check", "test whether a set of atoms is a stable model");
    common(check);
    check->add_option("--model", c.model_file, "file listing the true atoms")->required();

    auto* query = app.add_subcommand("query", "cautious or brave query for one atom");
    query->add_option("atom", c.query_atom, "atom to ask about")->required();
    common(query);
    query->add_option("--mode", c.mode, "cautious or brave")->check(CLI::IsMember({"cautious", "brave"}));

    auto* ground = app.add_subcommand("ground", "print the ground program");
    common(ground);
    ground->add_flag("--guided", c.guided, "ground only possibly derivable instances");

    auto* bench = app.add_subcommand("bench", "time the enumerators on random programs");
    bench->add_option("--seed", c.seed, "random seed");
    bench->add_option("--atoms", c.bench_atoms, "atoms per instance");
    bench->add_option("--rules", c.bench_rules, "rules per instance (mixed generator)");
    bench->add_option("--instances", c.bench_instances, "number of instances");
    bench->add_option("--generator", c.generator, "mixed or layered")->check(CLI::IsMember({"mixed", "layered"}));
    bench->add_option("--csv", c.csv_file, "also write the table as CSV");
    bench->add_option("--max-brute-atoms", c.max_brute_atoms, "skip brute force above this many atoms");
    bench->add_option("--max-guess-bits", c.max_guess_bits, "skip the flat enumerators above this guess width");
    bench->add_flag("--parallel", c.parallel, "run the parallel kernels");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kError;
    }

    try {
        if (*solve) return cmd_solve(c, in, out, err);
        if (*classify) return cmd_classify(c, in, out, err);
        if (*check) return cmd_check(c, in, out, err);
        if (*query) return cmd_query(c, in, out, err);
        if (*ground) return cmd_ground(c, in, out);
        if (*bench) return cmd_bench(c, out);
    } catch (const ParseError& e) {
        err << "error: " << (c.input == "-" ? std::string("<stdin>") : c.input) << ':' << e.what() << '\n';
        return kError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}

}  // namespace strata::cli
