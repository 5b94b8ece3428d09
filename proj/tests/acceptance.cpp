// Acceptance checks: one PASS/FAIL line per criterion. Exit status is non-zero if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dioc/analysis.hpp"
#include "dioc/connectedness.hpp"
#include "dioc/core.hpp"
#include "dioc/frontend.hpp"
#include "dioc/generator.hpp"
#include "dioc/projection.hpp"
#include "dioc/run.hpp"

namespace fs = std::filesystem;
using namespace dioc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string corpus(const std::string& rel) { return std::string(DIOC_CORPUS_DIR) + "/" + rel; }

struct Cli {
    int status = -1;
    std::string output;
    double secs = 0;
};

Cli cli(const std::string& args) {
    Cli r;
    std::string cmd = std::string(DIOC_CLI) + " " + args + " 2>&1";
    auto start = Clock::now();
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
    int st = pclose(pipe);
    r.secs = seconds_since(start);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string fixed(double v, int prec = 2) {
    std::ostringstream o;
    o.setf(std::ios::fixed);
    o.precision(prec);
    o << v;
    return o.str();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int n, const char* title, const Outcome& o) {
    std::cout << "criterion " << n << " " << (o.pass ? "PASS" : "FAIL") << "  " << title << ": " << o.detail << std::endl;
    if (!o.pass) ++failures;
}

// ---------------------------------------------------------------- 1

Outcome connectedness_cli() {
    Cli purchase = cli("check " + corpus("programs/purchase.dioc"));
    Cli upd = cli("check " + corpus("updates/fidelity.upd"));
    Cli neg = cli("check " + corpus("negative/disconnected.dioc"));
    bool names = neg.output.find("op1") != std::string::npos && neg.output.find("op2") != std::string::npos;
    double worst = std::max({purchase.secs, upd.secs, neg.secs});
    Outcome o;
    o.pass = purchase.status == 0 && upd.status == 0 && neg.status == 2 && names && worst < 1.0;
    o.detail = "purchase exit " + std::to_string(purchase.status) + ", fidelity exit " + std::to_string(upd.status) +
               ", disconnected exit " + std::to_string(neg.status) + (names ? " naming op1/op2" : " without op names") +
               ", slowest " + fixed(worst, 3) + "s";
    return o;
}

// ---------------------------------------------------------------- 2

Outcome intersection_oracle() {
    std::mt19937_64 rng(2024);
    std::vector<Role> names;
    for (char c = 'A'; c <= 'H'; ++c) names.push_back(Role(std::string(1, c)));
    int mismatches = 0, large = 0;
    const int cases = 12000;
    for (int k = 0; k < cases; ++k) {
        auto make = [&] {
            PairSet s;
            int n = static_cast<int>(rng() % 24);
            for (int i = 0; i < n; ++i) s.insert(RolePair::of(names[rng() % names.size()], names[rng() % names.size()]));
            return s;
        };
        PairSet a = make(), b = make();
        large += a.size() > 9 || b.size() > 9;
        mismatches += pairsets_all_intersect(a, b) != pairsets_all_intersect_bruteforce(a, b);
    }
    return {mismatches == 0, std::to_string(cases) + " random pairs (" + std::to_string(large) +
                                 " with a set above 9 pairs), " + std::to_string(mismatches) + " mismatches"};
}

// ---------------------------------------------------------------- 3

DiocProc chain(std::size_t n) {
    const char* roles[] = {"A", "B", "C"};
    DiocProc p = make_interaction(static_cast<Index>(n), "o", Role(roles[(n - 1) % 3]), Expr::literal(1),
                                  Role(roles[n % 3]), "x");
    for (std::size_t k = n - 1; k >= 1; --k)
        p = make_seq(make_interaction(static_cast<Index>(k), "o", Role(roles[(k - 1) % 3]), Expr::literal(1),
                                      Role(roles[k % 3]), "x"),
                     p);
    return p;
}

Outcome complexity_smoke() {
    std::vector<std::size_t> sizes{100, 1000, 10000};
    std::vector<double> times;
    bool all_connected = true;
    for (std::size_t n : sizes) {
        DiocProc p = chain(n);
        // Best of several repetitions; small sizes are otherwise dominated by noise.
        int reps = n <= 1000 ? 20 : 3;
        double best = 1e9;
        for (int r = 0; r < reps; ++r) {
            auto start = Clock::now();
            all_connected = connected(p).connected && all_connected;
            best = std::min(best, seconds_since(start));
        }
        times.push_back(best);
    }
    double r1 = times[1] / std::max(times[0], 1e-7), r2 = times[2] / std::max(times[1], 1e-7);
    Outcome o;
    o.pass = all_connected && r1 <= 250 && r2 <= 250 && times[2] < 10.0;
    o.detail = "n=100 " + fixed(times[0] * 1e3, 3) + "ms, n=1000 " + fixed(times[1] * 1e3, 3) + "ms, n=10000 " +
               fixed(times[2] * 1e3, 3) + "ms; ratios " + fixed(r1, 1) + "x, " + fixed(r2, 1) + "x";
    return o;
}

// ---------------------------------------------------------------- 4

Outcome golden_projection() {
    fs::path out = fs::temp_directory_path() / ("dioc-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(out);
    Cli r = cli("project " + corpus("programs/purchase.dioc") + " -o " + out.string());
    int compared = 0, differing = 0;
    for (const auto& e : fs::directory_iterator(corpus("golden"))) {
        ++compared;
        fs::path got = out / e.path().filename();
        if (!fs::exists(got) || read_file(got) != read_file(e.path())) ++differing;
    }
    std::size_t produced = 0;
    if (fs::exists(out))
        for ([[maybe_unused]] const auto& e : fs::directory_iterator(out)) ++produced;
    fs::remove_all(out);
    Outcome o;
    o.pass = r.status == 0 && compared == 3 && differing == 0 && produced == 3;
    o.detail = std::to_string(compared) + " golden files, " + std::to_string(differing) + " differing, " +
               std::to_string(produced) + " produced";
    if (r.status != 0) o.detail += "; project exit " + std::to_string(r.status) + ": " + r.output;
    return o;
}

// ---------------------------------------------------------------- 5

Outcome equivalence_purchase() {
    std::string base = "equiv " + corpus("programs/purchase.dioc") + " --fns " + corpus("fns/purchase.fns") + " --updates " +
                       corpus("updates/fidelity.upd") + " --policy ";
    struct Case {
        const char* name;
        std::string policy;
    };
    std::vector<Case> cases{{"no-update", "no-update"},
                            {"fidelity script", corpus("policies/fidelity-at-6.pol")},
                            {"repo swap", corpus("policies/repo-swap.pol")}};
    Outcome o;
    o.pass = true;
    for (const auto& c : cases) {
        Cli r = cli(base + c.policy);
        bool ok = r.status == 0 && r.output.rfind("equivalent", 0) == 0 && r.secs < 120.0;
        o.pass = o.pass && ok;
        std::string first = r.output.substr(0, r.output.find('\n'));
        o.detail += std::string(o.detail.empty() ? "" : "; ") + c.name + ": " + first + " in " + fixed(r.secs) + "s";
    }
    return o;
}

// ---------------------------------------------------------------- 6 and 8

struct Generated {
    GeneratorConfig cfg;
    DiocProc proc;
    RepoPtr repo;
    GlobalState sigma;
};

std::vector<Generated> generated_programs(int count) {
    std::vector<Generated> out;
    for (int s = 0; s < count; ++s) {
        Generated g;
        g.cfg.max_depth = 2 + s % 4;
        g.cfg.roles = 2 + (s / 4) % 2;
        g.proc = gen_dioc(g.cfg, static_cast<std::uint64_t>(s));
        g.repo = std::make_shared<UpdateRepo>(gen_updates(g.cfg, static_cast<std::uint64_t>(s)));
        g.sigma = generator_state(g.cfg);
        out.push_back(std::move(g));
    }
    return out;
}

ExploreLimits generated_limits() {
    ExploreLimits lim;
    lim.max_states = 1500000;
    return lim;
}

Outcome commutation(const std::vector<Generated>& programs) {
    int strict_fail = 0, atomic_fail = 0, truncated = 0, disconnected = 0;
    std::size_t steps = 0;
    std::string first;
    for (std::size_t k = 0; k < programs.size(); ++k) {
        const auto& g = programs[k];
        disconnected += !connected(g.proc).connected;
        DiocSystem d = make_dioc_system(g.proc, g.sigma, g.repo);
        CommutationReport strict = check_commutation(d, {}, generated_limits(), Granularity::SingleStep);
        CommutationReport atomic = check_commutation(d, {}, generated_limits(), Granularity::AtomicDelivery);
        strict_fail += !strict.ok;
        atomic_fail += !atomic.ok;
        truncated += strict.truncated || atomic.truncated;
        steps += strict.steps;
        if (!strict.ok && first.empty()) first = "program " + std::to_string(k);
    }
    Outcome o;
    o.pass = strict_fail == 0 && disconnected == 0 && truncated == 0;
    o.detail = std::to_string(programs.size()) + " programs, " + std::to_string(steps) + " network steps; " +
               std::to_string(strict_fail) + " fail step by step" + (first.empty() ? "" : " (first: " + first + ")") +
               ", " + std::to_string(atomic_fail) + " with interaction delivery as one step, " +
               std::to_string(truncated) + " cut off, " + std::to_string(disconnected) + " disconnected";
    return o;
}

Outcome event_relation(const std::vector<Generated>& programs) {
    int inclusion = 0, causality = 0, antisym = 0, minimality = 0, truncated = 0;
    std::string first;
    for (std::size_t k = 0; k < programs.size(); ++k) {
        const auto& g = programs[k];
        Network net = project(g.proc, g.sigma);
        EventRelationReport r = check_event_relation(g.proc, net);
        inclusion += !r.inclusion;
        causality += !r.causality;
        antisym += !r.antisymmetric;
        Schedule sched{g.repo};
        auto graph = explore_dpoc(make_dpoc_system(net, g.repo), {}, sched, generated_limits());
        truncated += graph.truncated;
        IndexCheck m = check_minimality_reachable(graph, {});
        if (!m.ok) {
            ++minimality;
            if (first.empty()) first = "program " + std::to_string(k);
        }
    }
    Outcome o;
    o.pass = inclusion == 0 && causality == 0 && antisym == 0 && minimality == 0 && truncated == 0;
    o.detail = std::to_string(programs.size()) + " programs; inclusion " + std::to_string(inclusion) +
               " fail, causality " + std::to_string(causality) + " fail, antisymmetry " + std::to_string(antisym) +
               " fail, minimality " + std::to_string(minimality) + " fail" +
               (first.empty() ? "" : " (first: " + first + ")") + ", " + std::to_string(truncated) + " cut off";
    return o;
}

// ---------------------------------------------------------------- 7

std::vector<fs::path> corpus_programs() {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(corpus("programs")))
        if (e.path().extension() == ".dioc") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

FunctionEnv fns_for(const fs::path& p) {
    fs::path f = fs::path(corpus("fns")) / (p.stem().string() + ".fns");
    return fs::exists(f) ? parse_functions(read_file(f)) : FunctionEnv{};
}

bool safe(const Network& net, const FunctionEnv& fns, const Schedule& schedule, std::string& why) {
    auto g = explore_dpoc(make_dpoc_system(net, schedule.front()), fns, schedule, {});
    if (g.truncated) {
        why = "exploration cut off";
        return false;
    }
    for (const SafetyReport& r : {check_deadlock_freedom(g), check_race_freedom(g, fns), check_orphan_freedom(g)}) {
        if (!r.ok || r.inconclusive) {
            why = r.property + ": " + r.detail;
            return false;
        }
    }
    return true;
}

Outcome safety() {
    UpdateRepo updates = load_updates(corpus("updates"));
    Policy exhaustive;
    exhaustive.kind = PolicyKind::Exhaustive;
    Policy none;
    none.kind = PolicyKind::NoUpdate;
    int runs = 0, failed = 0;
    std::string first;
    std::vector<fs::path> programs = corpus_programs();
    for (const auto& p : programs) {
        DiocProgram prog = parse_dioc(read_file(p));
        Network net = project(prog.proc, {}, prog.declared_roles);
        for (const Policy* pol : {&none, &exhaustive}) {
            ++runs;
            std::string why;
            if (!safe(net, fns_for(p), schedule_for(*pol, updates), why)) {
                ++failed;
                if (first.empty()) first = p.filename().string() + " " + why;
            }
        }
    }
    Schedule empty = make_schedule({UpdateRepo{}});
    auto fixture = [&](const char* file) {
        return explore_dpoc(make_dpoc_system(parse_network(read_file(corpus(std::string("raw-dpoc/") + file))),
                                             empty.front()),
                            {}, empty, {});
    };
    bool lone = !check_deadlock_freedom(fixture("lone-receive.dpocnet")).ok;
    bool race = !check_race_freedom(fixture("two-sends.dpocnet"), {}).ok;
    bool orphan = !check_orphan_freedom(fixture("stray-send.dpocnet")).ok;
    Outcome o;
    o.pass = programs.size() >= 10 && failed == 0 && lone && race && orphan;
    o.detail = std::to_string(programs.size()) + " programs under no-update and exhaustive updates, " +
               std::to_string(failed) + "/" + std::to_string(runs) + " unsafe" +
               (first.empty() ? "" : " (" + first + ")") + "; lone-receive " + (lone ? "deadlocks" : "passes") +
               ", two-sends " + (race ? "races" : "passes") + ", stray-send " + (orphan ? "orphans" : "passes");
    return o;
}

// ---------------------------------------------------------------- 9

bool detects(const char* condition, const std::string& network) {
    for (const auto& c : check_wellannotated_dpoc(parse_network(network)))
        if (c.condition == condition) return !c.ok;
    return false;
}

Outcome index_conditions() {
    int networks = 0, violations = 0;
    std::string first;
    for (const auto& p : corpus_programs()) {
        DiocProgram prog = parse_dioc(read_file(p));
        ++networks;
        for (const auto& c : check_wellannotated_dpoc(project(prog.proc, {}, prog.declared_roles))) {
            if (!c.ok) {
                ++violations;
                if (first.empty()) first = p.filename().string() + " " + c.condition;
            }
        }
    }
    struct Bad {
        const char* condition;
        std::string network;
    };
    std::vector<Bad> bad{
        {"C1", read_file(corpus("raw-dpoc/two-sends.dpocnet"))},
        {"C3", "role A { [1] 1.o : 1 to B | [2] 1.o : 2 to B }\nrole B { [3] 1.o : x from A; [4] 1.o : y from A }"},
        {"C4", "role A { [3] 1.o : 1 to B; [4] 1.o : 2 to B }\nrole B { [1] 1.o : x from A | [2] 1.o : y from A }"},
        {"C5", "role A { [1] scope @A { [2] 2.o : 1 to B } roles { A } }\nrole B { [2] 2.o : x from A }"},
        {"C6", "role A { [1] x = 1 | [3] while (true) { [1] x = 2 } }"},
    };
    std::string missed;
    for (const auto& b : bad)
        if (!detects(b.condition, b.network)) missed += std::string(missed.empty() ? "" : ", ") + b.condition;
    Outcome o;
    o.pass = violations == 0 && missed.empty();
    o.detail = std::to_string(networks) + " projected networks, " + std::to_string(violations) + " violations" +
               (first.empty() ? "" : " (" + first + ")") + "; hand-built C1, C3-C6 " +
               (missed.empty() ? "all detected" : "missed: " + missed);
    return o;
}

// ---------------------------------------------------------------- 10

Outcome determinism() {
    fs::path dir = fs::temp_directory_path() / ("dioc-determinism-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::string args = "run " + corpus("programs/purchase.dioc") + " --level dpoc --fns " + corpus("fns/purchase.fns") +
                       " --updates " + corpus("updates/fidelity.upd") + " --policy exhaustive --seed 17 --fuel 400";
    std::vector<std::string> traces;
    int bad_status = 0;
    for (int k = 0; k < 3; ++k) {
        fs::path file = dir / ("trace" + std::to_string(k) + ".jsonl");
        Cli r = cli(args + " --trace " + file.string());
        bad_status += r.status != 0;
        traces.push_back(fs::exists(file) ? read_file(file) : "");
    }
    fs::remove_all(dir);
    bool same = traces[0] == traces[1] && traces[1] == traces[2];
    std::size_t lines = static_cast<std::size_t>(std::count(traces[0].begin(), traces[0].end(), '\n'));
    Outcome o;
    o.pass = same && bad_status == 0 && lines > 0;
    o.detail = std::string("3 runs ") + (same ? "byte-identical" : "differ") + ", " + std::to_string(lines) +
               " trace records, " + std::to_string(bad_status) + " non-zero exits";
    return o;
}

void guarded(int n, const char* title, const std::function<Outcome()>& f) {
    auto start = Clock::now();
    Outcome o;
    try {
        o = f();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    o.detail += " [" + fixed(seconds_since(start), 1) + "s]";
    report(n, title, o);
}

}  // namespace

int main() {
    guarded(1, "connectedness check", connectedness_cli);
    guarded(2, "fast intersection oracle", intersection_oracle);
    guarded(3, "connectedness complexity", complexity_smoke);
    guarded(4, "projection golden files", golden_projection);
    guarded(5, "purchase scenario equivalence", equivalence_purchase);
    std::vector<Generated> programs = generated_programs(500);
    guarded(6, "upd commutation", [&] { return commutation(programs); });
    guarded(7, "safety corollaries", safety);
    guarded(8, "event structures and minimality", [&] { return event_relation(programs); });
    guarded(9, "index conditions", index_conditions);
    guarded(10, "run determinism", determinism);
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
