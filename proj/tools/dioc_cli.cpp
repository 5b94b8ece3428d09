// dioc: check, project, run and verify dynamic choreographies.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dioc/analysis.hpp"
#include "dioc/connectedness.hpp"
#include "dioc/core.hpp"
#include "dioc/frontend.hpp"
#include "dioc/projection.hpp"
#include "dioc/run.hpp"

namespace fs = std::filesystem;
using namespace dioc;

namespace {

enum Exit { kOk = 0, kParse = 1, kCheck = 2, kFuel = 3, kStuck = 4, kCounterexample = 5, kAnalyze = 6 };

struct Common {
    std::string updates;
    std::string policy = "first-applicable";
    std::uint64_t seed = 0;
    std::optional<std::size_t> fuel;
    std::size_t max_states = 500000;
    std::string fns;
    std::string trace;
};

struct Loaded {
    DiocProgram program;
    UpdateRepo updates;
    FunctionEnv fns;
    Policy policy;
};

Policy load_policy(const std::string& spec) {
    if (auto k = policy_kind_from_name(spec)) {
        Policy p;
        p.kind = *k;
        return p;
    }
    return parse_policy_script(read_file(spec));
}

Loaded load(const std::string& path, const Common& c) {
    Loaded l;
    l.program = parse_dioc(read_file(path));
    if (!c.updates.empty()) l.updates = load_updates(c.updates);
    if (!c.fns.empty()) l.fns = parse_functions(read_file(c.fns));
    l.policy = load_policy(c.policy);
    return l;
}

ExploreLimits limits_of(const Common& c) {
    ExploreLimits lim;
    if (c.fuel) lim.max_depth = *c.fuel;
    lim.max_states = c.max_states;
    return lim;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// ---------------------------------------------------------------- check

int check_one(const std::string& what, const DiocProc& p) {
    auto ann = well_annotated(p);
    if (!ann.ok) {
        std::cout << what << ": not well-annotated: " << ann.diagnostic << "\n";
        return kCheck;
    }
    auto con = connected(p);
    if (!con.connected) {
        std::cout << what << ": " << con.diagnostic << "\n";
        return kCheck;
    }
    std::cout << what << ": well-annotated, connected\n";
    return kOk;
}

int cmd_check(const std::string& path) {
    if (ends_with(path, ".upd")) {
        UpdateRepo repo = parse_updates(read_file(path));
        int rc = kOk;
        for (const auto& u : repo.entries) rc = std::max(rc, check_one("update " + u.name, u.body));
        return rc;
    }
    return check_one(path, parse_dioc(read_file(path)).proc);
}

// ---------------------------------------------------------------- project

int cmd_project(const std::string& path, const std::string& outdir, bool force, bool full) {
    DiocProgram prog = parse_dioc(read_file(path));
    auto con = connected(prog.proc);
    if (!con.connected && !force) {
        std::cerr << "refusing to project: " << con.diagnostic << " (use --force)\n";
        return kCheck;
    }
    fs::create_directories(outdir);
    for (const auto& rp : project(prog.proc, {}, prog.declared_roles)) {
        fs::path file = fs::path(outdir) / (rp.role.name() + ".dpoc");
        std::ofstream out(file, std::ios::binary);
        out << (full ? pretty(rp.proc) : display(rp.proc)) << "\n";
        std::cout << file.string() << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- run

int cmd_run(const std::string& path, const std::string& level, const Common& c) {
    Loaded l = load(path, c);
    RunOptions opts;
    opts.policy = l.policy;
    opts.seed = c.seed;
    opts.fuel = c.fuel.value_or(10000);
    RunResult r;
    if (level == "dioc") {
        r = run_dioc(l.program.proc, l.updates, l.fns, opts);
    } else {
        r = run_dpoc(project(l.program.proc, {}, l.program.declared_roles), l.updates, l.fns, opts);
    }
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!c.trace.empty() && c.trace != "-") {
        file.open(c.trace, std::ios::binary);
        out = &file;
    }
    for (std::size_t k = 0; k < r.trace.size(); ++k) *out << trace_record(r.trace[k], k) << "\n";
    switch (r.outcome) {
        case RunOutcome::Terminated: std::cerr << "terminated after " << r.trace.size() << " steps\n"; return kOk;
        case RunOutcome::OutOfFuel: std::cerr << "out of fuel after " << r.trace.size() << " steps\n"; return kFuel;
        case RunOutcome::Stuck: std::cerr << "stuck after " << r.trace.size() << " steps\n"; return kStuck;
    }
    return kOk;
}

// ---------------------------------------------------------------- equiv

int cmd_equiv(const std::string& path, const Common& c, const std::string& fault, bool traces, std::size_t trace_len) {
    Loaded l = load(path, c);
    Schedule schedule = schedule_for(l.policy, l.updates);
    Network net = project(l.program.proc, {}, l.program.declared_roles);
    if (fault == "drop-receive") {
        net = drop_first_receive(net);
    } else if (!fault.empty()) {
        std::cerr << "unknown fault '" << fault << "'\n";
        return kParse;
    }
    DiocSystem d = make_dioc_system(l.program.proc, {}, schedule.front());
    DpocSystem n = make_dpoc_system(net, schedule.front());
    ExploreLimits lim = limits_of(c);
    if (traces) {
        auto td = weak_traces_dioc(d, l.fns, schedule, lim, trace_len);
        auto tn = weak_traces_dpoc(n, l.fns, schedule, lim, trace_len);
        if (td == tn) {
            std::cout << "trace-equivalent (" << td.size() << " weak traces up to length " << trace_len << ")\n";
            return kOk;
        }
        std::cout << "counterexample: weak trace sets differ\n";
        std::vector<Trace> only;
        std::set_symmetric_difference(td.begin(), td.end(), tn.begin(), tn.end(), std::back_inserter(only));
        for (const auto& s : only.front()) std::cout << "  " << s << "\n";
        return kCounterexample;
    }
    EquivResult r = equiv_check(d, n, l.fns, schedule, lim);
    std::cout << to_string(r.verdict) << " (choreography states " << r.dioc_states << ", network states "
              << r.dpoc_states << ")";
    if (!r.detail.empty()) std::cout << ": " << r.detail;
    std::cout << "\n";
    for (const auto& s : r.counterexample) std::cout << "  " << s << "\n";
    switch (r.verdict) {
        case Verdict::Equivalent: return kOk;
        case Verdict::Counterexample: return kCounterexample;
        case Verdict::Inconclusive: return kFuel;
    }
    return kOk;
}

// ---------------------------------------------------------------- analyze

struct Row {
    std::string property;
    std::string result;
    std::string detail;
};

bool analyze_network(const Network& net, const FunctionEnv& fns, const Schedule& schedule,
                     const ExploreLimits& lim, std::vector<Row>& rows) {
    bool ok = true;
    DpocSystem init = make_dpoc_system(net, schedule.front());
    auto g = explore_dpoc(init, fns, schedule, lim);
    auto add = [&](const SafetyReport& r) {
        std::string res = !r.ok ? "FAIL" : r.inconclusive ? "inconclusive" : "pass";
        std::string detail = r.detail;
        if (!r.ok) {
            std::string w;
            for (const auto& s : r.witness) w += (w.empty() ? "" : ", ") + s;
            detail += " after [" + w + "]";
        }
        rows.push_back({r.property, res, detail});
        ok = ok && r.ok && !r.inconclusive;
    };
    add(check_deadlock_freedom(g));
    add(check_race_freedom(g, fns));
    add(check_orphan_freedom(g));
    for (const auto& c : check_wellannotated_dpoc(net)) {
        rows.push_back({c.condition, c.ok ? "pass" : "FAIL", c.witnesses.empty() ? "" : c.witnesses.front()});
        ok = ok && c.ok;
    }
    IndexCheck c2 = check_minimality_reachable(g, fns);
    rows.push_back({"C2", c2.ok ? "pass" : "FAIL", c2.ok ? "" : c2.witnesses[1] + " " + c2.witnesses[0]});
    ok = ok && c2.ok;
    rows.push_back({"states", std::to_string(g.states.size()), g.truncated ? "exploration cut off" : ""});
    return ok;
}

int cmd_analyze(const std::string& path, const Common& c) {
    UpdateRepo updates = c.updates.empty() ? UpdateRepo{} : load_updates(c.updates);
    FunctionEnv fns = c.fns.empty() ? FunctionEnv{} : parse_functions(read_file(c.fns));
    Schedule schedule = schedule_for(load_policy(c.policy), updates);
    Network net;
    if (ends_with(path, ".dpocnet")) {
        net = parse_network(read_file(path));
    } else {
        DiocProgram prog = parse_dioc(read_file(path));
        if (int rc = check_one(path, prog.proc); rc != kOk) return rc;
        net = project(prog.proc, {}, prog.declared_roles);
    }
    std::vector<Row> rows;
    bool ok = analyze_network(net, fns, schedule, limits_of(c), rows);
    for (const auto& r : rows) {
        std::cout << std::left << std::setw(18) << r.property << std::setw(14) << r.result << r.detail << "\n";
    }
    return ok ? kOk : kAnalyze;
}

// ---------------------------------------------------------------- corpus

int cmd_corpus(const std::string& dir, const Common& c) {
    fs::path root(dir);
    UpdateRepo updates;
    if (fs::is_directory(root / "updates")) updates = load_updates(root / "updates");
    std::vector<fs::path> programs;
    for (const auto& e : fs::directory_iterator(root / "programs"))
        if (e.path().extension() == ".dioc") programs.push_back(e.path());
    std::sort(programs.begin(), programs.end());
    bool ok = true;
    std::cout << std::left << std::setw(24) << "program" << std::setw(12) << "connected" << std::setw(12) << "safety"
              << std::setw(14) << "equiv" << "time\n";
    for (const auto& p : programs) {
        auto start = std::chrono::steady_clock::now();
        DiocProgram prog = parse_dioc(read_file(p));
        FunctionEnv fns;
        fs::path fpath = root / "fns" / (p.stem().string() + ".fns");
        if (fs::exists(fpath)) fns = parse_functions(read_file(fpath));
        bool con = connected(prog.proc).connected && well_annotated(prog.proc).ok;
        std::string safety = "-", equiv = "-";
        if (con) {
            Policy pol;
            pol.kind = PolicyKind::Exhaustive;
            Schedule schedule = schedule_for(pol, updates);
            Network net = project(prog.proc, {}, prog.declared_roles);
            std::vector<Row> rows;
            safety = analyze_network(net, fns, schedule, limits_of(c), rows) ? "pass" : "FAIL";
            auto r = equiv_check(make_dioc_system(prog.proc, {}, schedule.front()),
                                 make_dpoc_system(net, schedule.front()), fns, schedule, limits_of(c));
            equiv = to_string(r.verdict);
            ok = ok && safety == "pass" && r.verdict == Verdict::Equivalent;
        }
        ok = ok && con;
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream t;
        t << std::fixed << std::setprecision(2) << secs << "s";
        std::cout << std::setw(24) << p.filename().string() << std::setw(12) << (con ? "yes" : "NO")
                  << std::setw(12) << safety << std::setw(14) << equiv << t.str() << "\n";
    }
    return ok ? kOk : kAnalyze;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic choreographies: check, project, run and verify"};
    app.require_subcommand(1);
    Common c;
    auto common = [&c](CLI::App* sub, bool for_run) {
        sub->add_option("--updates", c.updates, "update file or directory of .upd files");
        sub->add_option("--policy", c.policy, "no-update, first-applicable, exhaustive, or a policy script file");
        sub->add_option("--fns", c.fns, "function stub file");
        sub->add_option("--fuel", c.fuel, for_run ? "maximum number of steps" : "maximum exploration depth");
        if (!for_run) sub->add_option("--max-states", c.max_states, "maximum number of explored states");
    };

    std::string path, outdir = ".", level = "dioc", fault;
    bool force = false, full = false, traces = false;
    std::size_t trace_len = 40;

    auto* check = app.add_subcommand("check", "well-annotation and connectedness");
    check->add_option("file", path, ".dioc program or .upd update file")->required();

    auto* proj = app.add_subcommand("project", "write one process per role");
    proj->add_option("file", path)->required();
    proj->add_option("-o,--out", outdir, "output directory");
    proj->add_flag("--force", force, "project even if the program is not connected");
    proj->add_flag("--full", full, "full syntax with every index, prefix and 1");

    auto* run = app.add_subcommand("run", "execute one run and print its trace");
    run->add_option("file", path)->required();
    run->add_option("--level", level, "dioc or dpoc")->check(CLI::IsMember({"dioc", "dpoc"}));
    run->add_option("--seed", c.seed, "seed for resolving nondeterminism");
    run->add_option("--trace", c.trace, "trace output file (default stdout)");
    common(run, true);

    auto* equiv = app.add_subcommand("equiv", "weak bisimulation between a program and its projection");
    equiv->add_option("file", path)->required();
    equiv->add_option("--inject-fault", fault, "mutate the projection: drop-receive");
    equiv->add_flag("--traces", traces, "compare weak trace sets instead");
    equiv->add_option("--trace-length", trace_len, "maximum weak trace length for --traces");
    common(equiv, false);

    auto* analyze = app.add_subcommand("analyze", "deadlock, race and orphan freedom plus index conditions");
    analyze->add_option("file", path, ".dioc program or .dpocnet network")->required();
    common(analyze, false);

    auto* corpus = app.add_subcommand("corpus", "check every program of a corpus directory");
    corpus->add_option("dir", path)->required();
    common(corpus, false);

    CLI11_PARSE(app, argc, argv);
    try {
        if (check->parsed()) return cmd_check(path);
        if (proj->parsed()) return cmd_project(path, outdir, force, full);
        if (run->parsed()) return cmd_run(path, level, c);
        if (equiv->parsed()) return cmd_equiv(path, c, fault, traces, trace_len);
        if (analyze->parsed()) return cmd_analyze(path, c);
        if (corpus->parsed()) return cmd_corpus(path, c);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
    return kOk;
}
