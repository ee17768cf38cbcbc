// smposet: realize posets as stable marriage instances and count, sample and
// select stable matchings. Exit codes: 1 usage, 2 parse/validation, 3 cap exceeded.

#include <smp/decomposition.hpp>
#include <smp/downset_dp.hpp>
#include <smp/error.hpp>
#include <smp/fair.hpp>
#include <smp/realize.hpp>
#include <smp/rotation.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace smp;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// Lines "u v color"; every edge of H must be listed.
Dag apply_coloring(const Dag& H, const std::string& text)
{
    std::vector<int> colors(H.edges().size(), 0);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        int u, v, c;
        if (!(ls >> u)) continue;
        if (!(ls >> v >> c) || c < 1) throw ParseError("expected 'u v color'", lineno);
        const int i = H.edge_index(u - 1, v - 1);
        if (i < 0) throw ParseError("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge", lineno);
        colors[i] = c;
    }
    if (std::find(colors.begin(), colors.end(), 0) != colors.end()) throw ValidationError("coloring misses an edge");
    return Dag(H.size(), H.edges(), colors);
}

std::string format_lists(const ListRealization& L)
{
    const Side listed = L.side == ListSide::Men ? Side::Man : Side::Woman;
    const std::string tag = listed == Side::Man ? "LM" : "LW";
    std::string out;
    for (int g : {1, 2}) {
        out += tag + std::to_string(g) + ":";
        for (int b : g == 1 ? L.master1 : L.master2) out += " " + L.inst.name(other(listed), b);
        out += "\n";
    }
    for (int a = 0; a < L.inst.size(listed); ++a)
        out += "group " + L.inst.name(listed, a) + ": " + std::to_string(L.group[a]) + "\n";
    return out;
}

void print_matching(const Instance& I, const Matching& mu, const FairnessScores& s)
{
    std::cout << format_matching(I, mu);
    std::cout << "men " << s.men << "\nwomen " << s.women << "\nsexequality " << s.sex_equality() << "\nbalance "
              << s.balance() << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stable matchings, rotation posets and path decompositions"};
    app.require_subcommand(1);

    std::string poset, instance, decomp, coloring, out, dag, dot, model, objective, side = "men";
    unsigned long long seed = 0;
    int draws = 1;
    long long cap = 1'000'000;
    bool upper = false;

    auto* realize = app.add_subcommand("realize", "build an instance whose rotation poset is the given poset");
    realize->add_option("--model", model)->required()->check(
        CLI::IsMember({"generic", "complete", "bounded3", "attr6", "list2inf", "range"}));
    realize->add_option("--poset", poset)->required()->check(CLI::ExistingFile);
    realize->add_option("--decomp", decomp, "nice path decomposition (range model)")->check(CLI::ExistingFile);
    realize->add_option("--coloring", coloring, "lines 'u v color' (generic model)")->check(CLI::ExistingFile);
    realize->add_option("--side", side, "listed side of list2inf")->check(CLI::IsMember({"men", "women"}));
    realize->add_option("-o,--output", out)->required();

    auto* analyze = app.add_subcommand("analyze", "rotations, digraph, range and extent width");
    analyze->add_option("--instance", instance)->required()->check(CLI::ExistingFile);
    analyze->add_option("--dot", dot, "write the rotation digraph in DOT");

    auto* count = app.add_subcommand("count", "number of stable matchings or downsets");
    auto* count_inst = count->add_option("--instance", instance)->check(CLI::ExistingFile);
    auto* count_dag = count->add_option("--dag", dag)->check(CLI::ExistingFile);
    auto* count_pd = count->add_option("--decomp", decomp)->check(CLI::ExistingFile);
    count_inst->excludes(count_dag)->excludes(count_pd);
    count_dag->needs(count_pd);
    count_pd->needs(count_dag);

    auto* sample = app.add_subcommand("sample", "uniformly random stable matchings");
    sample->add_option("--instance", instance)->required()->check(CLI::ExistingFile);
    sample->add_option("--seed", seed)->required();
    sample->add_option("--draws", draws)->check(CLI::PositiveNumber);

    auto* median = app.add_subcommand("median", "median stable matching");
    median->add_option("--instance", instance)->required()->check(CLI::ExistingFile);
    median->add_flag("--upper", upper, "upper median when the count is even");

    auto* fair = app.add_subcommand("fair", "sex-equal or balanced stable matching by enumeration");
    fair->add_option("--instance", instance)->required()->check(CLI::ExistingFile);
    fair->add_option("--objective", objective)->required()->check(CLI::IsMember({"sexequal", "balanced"}));
    fair->add_option("--cap", cap, "maximum number of stable matchings to enumerate");

    auto* verify = app.add_subcommand("verify", "check that an instance realizes a poset");
    verify->add_option("--poset", poset)->required()->check(CLI::ExistingFile);
    verify->add_option("--instance", instance)->required()->check(CLI::ExistingFile);

    auto* oracle = app.add_subcommand("oracle", "brute-force counterparts for comparison");
    oracle->require_subcommand(1);
    auto* o_matchings = oracle->add_subcommand("matchings", "all stable matchings by rotation DFS");
    o_matchings->add_option("--instance", instance)->required()->check(CLI::ExistingFile);
    auto* o_downsets = oracle->add_subcommand("downsets", "downset count by enumeration");
    o_downsets->add_option("--dag", dag)->required()->check(CLI::ExistingFile);
    auto* o_pathwidth = oracle->add_subcommand("pathwidth", "exact pathwidth of a tiny DAG");
    o_pathwidth->add_option("--dag", dag)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*realize) {
            Dag H = parse_dag(slurp(poset));
            if (!coloring.empty()) {
                if (model != "generic") throw CLI::ValidationError("--coloring", "only the generic model takes a coloring");
                H = apply_coloring(H, slurp(coloring));
            }
            Instance I;
            if (model == "generic") I = realize_generic(H);
            else if (model == "complete") I = realize_complete(H);
            else if (model == "bounded3") I = realize_bounded3(H);
            else if (model == "attr6") {
                const AttributeRealization r = realize_attr6(H);
                I = r.inst;
                spit(out + ".profiles", format_profiles(r));
            } else if (model == "list2inf") {
                const ListRealization L = realize_list2inf(H, side == "men" ? ListSide::Men : ListSide::Women);
                I = L.inst;
                spit(out + ".lists", format_lists(L));
            } else {
                const Dag R = transitive_reduction(H);
                const PathDecomposition X =
                    decomp.empty() ? pathwidth_exact_tiny(R).second : to_nice(R, parse_decomposition(slurp(decomp)));
                I = realize_range(R, X);
            }
            spit(out, format_instance(I));
            return 0;
        }
        if (*analyze) {
            const Instance I = parse_instance(slurp(instance));
            const RotationDigraph dg = rotation_digraph(I);
            std::cout << "rotations " << dg.size() << "\n";
            for (const auto& r : dg.rotations)
                std::cout << "  r" << r.id + 1 << " " << format_rotation(I, r) << (r.label.empty() ? "" : " " + r.label) << "\n";
            std::cout << "edges " << dg.edges.size() << "\n";
            for (const auto& e : dg.edges)
                std::cout << "  r" << e.from + 1 << " -> r" << e.to + 1 << " rule "
                          << (e.rules & Rule1 ? "1" : "") << (e.rules & Rule2 ? "2" : "") << "\n";
            if (I.complete()) {
                const ExtentDecomposition d = construct_path_decomposition(I);
                std::cout << "range " << d.profile.k << "\n";
                std::cout << "minrank men";
                for (int r : d.profile.orank_men) std::cout << " " << r;
                std::cout << "\nminrank women";
                for (int r : d.profile.orank_women) std::cout << " " << r;
                std::cout << "\nextent width " << d.nice.width() << "\n";
            } else {
                std::cout << "range n/a (incomplete lists)\n";
            }
            if (!dot.empty()) spit(dot, rotation_digraph_dot(I, dg));
            return 0;
        }
        if (*count) {
            if (!instance.empty()) std::cout << count_stable_matchings(parse_instance(slurp(instance))).get_str() << "\n";
            else if (!dag.empty())
                std::cout << count_downsets(parse_dag(slurp(dag)), parse_decomposition(slurp(decomp))).get_str() << "\n";
            else throw CLI::RequiredError("count needs --instance or --dag with --decomp");
            return 0;
        }
        if (*sample) {
            const Instance I = parse_instance(slurp(instance));
            StableMatchingSampler s(I);
            std::mt19937_64 rng(seed);
            for (int i = 0; i < draws; ++i) {
                std::cout << "# draw " << i + 1 << "\n" << format_matching(I, s.draw(rng));
            }
            return 0;
        }
        if (*median) {
            const Instance I = parse_instance(slurp(instance));
            const MedianResult r = median_stable_matching(I, upper);
            std::cout << "stable matchings " << r.total.get_str() << "\n";
            print_matching(I, r.matching, fairness_scores(I, r.matching));
            return 0;
        }
        if (*fair) {
            const Instance I = parse_instance(slurp(instance));
            const FairResult r = objective == "sexequal" ? sex_equal_bruteforce(I, cap) : balanced_bruteforce(I, cap);
            std::cout << "examined " << r.examined << "\n";
            print_matching(I, r.matching, r.scores);
            return 0;
        }
        if (*verify) {
            const bool ok = check_realization(parse_dag(slurp(poset)), parse_instance(slurp(instance)));
            std::cout << (ok ? "ok" : "not realized") << "\n";
            return ok ? 0 : 2;
        }
        if (*o_matchings) {
            const Instance I = parse_instance(slurp(instance));
            const auto all = all_stable_matchings_bruteforce(I, 64);
            std::cout << all.size() << "\n";
            for (size_t i = 0; i < all.size(); ++i) std::cout << "# matching " << i + 1 << "\n" << format_matching(I, all[i]);
            return 0;
        }
        if (*o_downsets) {
            std::cout << enumerate_downsets_bruteforce(parse_dag(slurp(dag))).size() << "\n";
            return 0;
        }
        if (*o_pathwidth) {
            const auto [w, X] = pathwidth_exact_tiny(parse_dag(slurp(dag)));
            std::cout << w << "\n" << format_decomposition(X);
            return 0;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
