// Command-line surface for the lab: matrix generators, structural analyzers,
// domino checks, protocol runs and sweeps, homogeneous-set search, reduction
// search, and the acceptance suite.
//
// Exit codes: 0 success, 1 domain/usage error, 2 search budget exhausted.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "qslab/acceptance.hpp"
#include "qslab/domino.hpp"
#include "qslab/pattern.hpp"
#include "qslab/problems.hpp"
#include "qslab/protocol/protocols.hpp"
#include "qslab/ramsey.hpp"
#include "qslab/reduction.hpp"
#include "qslab/structure.hpp"

namespace {

using namespace qslab;

DominoSet parse_domino_set(const std::string& text) {
    if (text == "all") return DominoSet::all();
    if (text == "none" || text.empty()) return DominoSet::none();
    DominoSet out = DominoSet::none();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.size() != 2 || (item[0] != '0' && item[0] != '1') || (item[1] != '0' && item[1] != '1')) {
            throw domain_error("domino must be two bits, got '" + item + "'");
        }
        out = out.with(make_domino(item[0] == '1', item[1] == '1'));
    }
    return out;
}

BitMatrix load_bitmatrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open matrix file " + path);
    return read_bitmatrix_text(in);
}

PartialMatrix load_partial(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open matrix file " + path);
    return read_partial_matrix_text(in);
}

// Set file: "count d" then one bitstring per line.
std::vector<Bits> load_string_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open set file " + path);
    std::size_t count = 0, dim = 0;
    if (!(in >> count >> dim)) throw domain_error("set file header must be 'count d'");
    std::vector<Bits> out;
    std::string line;
    std::getline(in, line);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) throw domain_error("set file ended early");
        if (line.size() != dim) throw domain_error("set entry has wrong dimension");
        out.push_back(Bits::from_string(line));
    }
    return out;
}

void write_string_set(std::ostream& os, const std::vector<Bits>& z) {
    os << z.size() << ' ' << (z.empty() ? 0 : z.front().size()) << '\n';
    for (const Bits& b : z) os << b.to_string() << '\n';
}

// Coloring file: one line per subset, indices then the color, all integers.
SubsetColoring load_coloring(const std::string& path, int ground, int arity) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open coloring file " + path);
    std::vector<std::pair<std::vector<int>, int>> raw;
    std::string line;
    int max_index = -1;
    std::size_t max_size = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<int> nums;
        int v;
        while (ls >> v) nums.push_back(v);
        if (nums.empty()) continue;
        const int color = nums.back();
        nums.pop_back();
        for (std::size_t i = 0; i < nums.size(); ++i) {
            max_index = std::max(max_index, nums[i]);
        }
        max_size = std::max(max_size, nums.size());
        raw.push_back({std::move(nums), color});
    }
    if (ground == 0) ground = max_index + 1;
    if (arity == 0) arity = static_cast<int>(max_size);
    SubsetColoring coloring(ground, arity);
    for (auto& [subset, color] : raw) coloring.assign_raw(subset, std::to_string(color));
    coloring.validate_total();
    return coloring;
}

void print_transcript(std::ostream& os, const Transcript& t) {
    for (const auto& e : t.entries) {
        os << "  " << e.oracle << " " << e.detail << " -> " << e.answer << '\n';
    }
}

std::string distance_text(const std::optional<int>& d) {
    return d ? std::to_string(*d) : std::string("bot");
}

struct OutputTarget {
    std::string path;
    std::ofstream file;

    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file) throw domain_error("cannot open output file " + path);
        }
        return file;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale lab for constant-cost communication problems"};
    app.require_subcommand(1);
    OutputTarget out;
    app.add_option("--out", out.path, "write results to this file instead of stdout");

    int exit_code = 0;

    // ---- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "emit a problem matrix in text format");
    gen->require_subcommand(1);
    struct {
        int n = 3, k = 1, t = 4, d = 2, shattered_k = 3;
    } g;
    auto emit = [&](Family family) {
        ProblemSpec spec;
        spec.family = family;
        spec.n = g.n;
        spec.k = g.k;
        spec.t = g.t;
        spec.d = g.d;
        write_matrix_text(out.stream(), generate(spec));
    };
    auto* gen_eq = gen->add_subcommand("eq", "identity pattern on n-bit labels");
    gen_eq->add_option("--n", g.n)->required();
    gen_eq->callback([&] { emit(Family::EQ); });
    auto* gen_gt_cmd = gen->add_subcommand("gt", "order matrix of side t");
    gen_gt_cmd->add_option("--t", g.t)->required();
    gen_gt_cmd->callback([&] { emit(Family::GT); });
    auto* gen_ehd_cmd = gen->add_subcommand("ehd", "1 exactly at distance k");
    gen_ehd_cmd->add_option("--n", g.n)->required();
    gen_ehd_cmd->add_option("--k", g.k)->required();
    gen_ehd_cmd->callback([&] { emit(Family::EHD); });
    auto* gen_thd_cmd = gen->add_subcommand("thd", "1 exactly at distance <= k");
    gen_thd_cmd->add_option("--n", g.n)->required();
    gen_thd_cmd->add_option("--k", g.k)->required();
    gen_thd_cmd->callback([&] { emit(Family::THD); });
    auto* gen_iip_cmd = gen->add_subcommand("iip", "0 exactly at vanishing integer inner product");
    gen_iip_cmd->add_option("--d", g.d)->required();
    gen_iip_cmd->add_option("--n", g.n)->required();
    gen_iip_cmd->callback([&] { emit(Family::IIP); });
    auto* gen_sh = gen->add_subcommand("shattered", "2^k x k shattered two-tally construction");
    gen_sh->add_option("--k", g.shattered_k)->required();
    gen_sh->callback([&] { write_matrix_text(out.stream(), gen_shattered_two_tally(g.shattered_k).matrix); });
    auto* gen_gadget = gen->add_subcommand("gadget", "7-bit two-tally gadget at distances 2/4");
    gen_gadget->callback([&] { write_matrix_text(out.stream(), gen_ehd2_gadget()); });

    // ---- analyze -----------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "structural report for matrices");
    std::vector<std::string> analyze_files;
    int vc_cap = 4, gt_cap = 5;
    bool analyze_csv = false;
    analyze->add_option("files", analyze_files, "matrix files")->required();
    analyze->add_option("--vc-cap", vc_cap, "largest shattered set searched for");
    analyze->add_option("--gt-cap", gt_cap, "largest chain searched for");
    analyze->add_flag("--csv", analyze_csv, "one CSV row per matrix");
    analyze->callback([&] {
        auto& os = out.stream();
        if (analyze_csv) os << "file,rows,cols,vc_dimension,max_gt,max_negated_gt\n";
        for (const auto& path : analyze_files) {
            const BitMatrix m = load_bitmatrix(path);
            const int vc = vc_dimension(m, vc_cap);
            const GtReport gt = max_gt_size(m, gt_cap);
            if (analyze_csv) {
                os << path << ',' << m.rows() << ',' << m.cols() << ',' << vc << ',' << gt.max_gt << ','
                   << gt.max_negated_gt << '\n';
                continue;
            }
            os << path << ": " << m.rows() << "x" << m.cols() << '\n';
            os << "  vc_dimension = " << vc << (vc >= vc_cap ? " (at cap)" : "") << '\n';
            os << "  max_gt = " << gt.max_gt << (gt.gt_at_cap ? " (at cap)" : "") << '\n';
            os << "  max_negated_gt = " << gt.max_negated_gt << (gt.negated_at_cap ? " (at cap)" : "") << '\n';
        }
    });

    // ---- domino ------------------------------------------------------------
    auto* domino = app.add_subcommand("domino", "domino calculus helpers");
    domino->require_subcommand(1);
    auto* dtype = domino->add_subcommand("type", "signature and tally of a pair");
    std::string dx, dy, ddelta = "all";
    dtype->add_option("--x", dx)->required();
    dtype->add_option("--y", dy)->required();
    dtype->add_option("--delta", ddelta, "all, none, or a comma list like 01,10");
    dtype->callback([&] {
        const auto t = delta_type(Bits::from_string(dx), Bits::from_string(dy), parse_domino_set(ddelta));
        out.stream() << t.to_string() << '\n';
    });

    // ---- check -------------------------------------------------------------
    auto* check = app.add_subcommand("check", "structural checks");
    check->require_subcommand(1);
    auto* inv = check->add_subcommand("invariance", "shuffle invariance of a labelled matrix");
    std::string inv_file, inv_delta = "all";
    inv->add_option("--file", inv_file)->required();
    inv->add_option("--delta", inv_delta);
    inv->callback([&] {
        const auto res = is_shuffle_invariant(load_bitmatrix(inv_file), parse_domino_set(inv_delta));
        auto& os = out.stream();
        if (res.ok()) {
            os << "invariant\n";
        } else {
            os << "violation\n";
            os << res.violation->x.to_string() << '\n' << res.violation->y.to_string() << '\n';
            os << res.violation->u.to_string() << '\n' << res.violation->v.to_string() << '\n';
            exit_code = 1;
        }
    });
    auto* tt = check->add_subcommand("two-tally", "two-tally conditions of a labelled partial matrix");
    std::string tt_file;
    int tt_k = 2;
    tt->add_option("--file", tt_file)->required();
    tt->add_option("--k", tt_k)->required();
    tt->callback([&] {
        const auto report = verify_two_tally(load_partial(tt_file), tt_k);
        auto& os = out.stream();
        os << "entries_match_distance: " << (report.entries_match_distance ? "pass" : "fail") << '\n';
        os << "tallies_consistent: " << (report.tallies_consistent ? "pass" : "fail") << '\n';
        if (!report.ok()) {
            os << "first violation: " << report.violation << '\n';
            exit_code = 1;
        }
    });

    // ---- run ---------------------------------------------------------------
    auto* run = app.add_subcommand("run", "run one protocol instance");
    run->require_subcommand(1);
    bool show_transcript = false;
    run->add_flag("--transcript", show_transcript, "print every oracle query");

    auto* run_gt = run->add_subcommand("eq-gt", "order predicate from equality queries");
    std::uint64_t rg_n = 8, rg_i = 1, rg_j = 1;
    run_gt->add_option("--N", rg_n)->required();
    run_gt->add_option("--i", rg_i)->required();
    run_gt->add_option("--j", rg_j)->required();
    run_gt->callback([&] {
        const auto res = eq_gt_protocol(rg_n, rg_i, rg_j);
        out.stream() << res.result << ", queries=" << res.transcript.total() << '\n';
        if (show_transcript) print_transcript(out.stream(), res.transcript);
    });

    auto* run_naive = run->add_subcommand("naive-thd", "threshold distance by raw binary search");
    std::string rn_x, rn_y;
    int rn_k = 1;
    run_naive->add_option("--x", rn_x)->required();
    run_naive->add_option("--y", rn_y)->required();
    run_naive->add_option("--k", rn_k)->required();
    run_naive->callback([&] {
        const auto res = naive_thd_protocol(Bits::from_string(rn_x), Bits::from_string(rn_y), rn_k);
        out.stream() << distance_text(res.distance) << ", queries=" << res.transcript.total() << '\n';
        if (show_transcript) print_transcript(out.stream(), res.transcript);
    });

    auto* run_bd = run->add_subcommand("bounded-diameter", "threshold distance on a low-diameter set");
    std::string bd_set, bd_x, bd_y;
    int bd_k = 1;
    bool bd_skip_validation = false;
    run_bd->add_option("--set", bd_set)->required();
    run_bd->add_option("--x", bd_x)->required();
    run_bd->add_option("--y", bd_y)->required();
    run_bd->add_option("--k", bd_k)->required();
    run_bd->add_flag("--skip-diameter-check", bd_skip_validation, "trust the promise instead of verifying it");
    run_bd->callback([&] {
        BoundedDiameterOptions opt;
        opt.validate_diameter = !bd_skip_validation;
        const auto res = bounded_diameter_threshold(load_string_set(bd_set), Bits::from_string(bd_x),
                                                    Bits::from_string(bd_y), bd_k, opt);
        out.stream() << distance_text(res.distance) << ", queries=" << res.transcript.total() << '\n';
        if (show_transcript) print_transcript(out.stream(), res.transcript);
    });

    auto* run_td = run->add_subcommand("threshold-distance", "full threshold distance protocol");
    std::string td_sets, td_xs, td_ys, td_x, td_y;
    int td_k = 1;
    std::uint64_t td_seed = 0;
    run_td->add_option("--sets", td_sets, "shared set file used for both sides");
    run_td->add_option("--xs", td_xs, "row-side set file");
    run_td->add_option("--ys", td_ys, "column-side set file");
    run_td->add_option("--x", td_x)->required();
    run_td->add_option("--y", td_y)->required();
    run_td->add_option("--k", td_k)->required();
    run_td->add_option("--seed", td_seed);
    run_td->callback([&] {
        std::vector<Bits> xs, ys;
        if (!td_sets.empty()) {
            xs = load_string_set(td_sets);
            ys = xs;
        } else if (!td_xs.empty() && !td_ys.empty()) {
            xs = load_string_set(td_xs);
            ys = load_string_set(td_ys);
        } else {
            throw domain_error("provide --sets or both --xs and --ys");
        }
        ThresholdOptions opt;
        opt.seed = td_seed;
        const auto res = threshold_distance(xs, ys, Bits::from_string(td_x), Bits::from_string(td_y), td_k, opt);
        out.stream() << distance_text(res.distance) << ", queries=" << res.transcript.total() << '\n';
        if (show_transcript) print_transcript(out.stream(), res.transcript);
    });

    // ---- sweep -------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "query-count sweep as CSV");
    std::vector<std::size_t> sw_sizes = {64, 256};
    std::vector<std::size_t> sw_dims = {256};
    std::vector<int> sw_ks = {2};
    int sw_trials = 32;
    std::uint64_t sw_seed = 0;
    std::string sw_protocol = "threshold-distance";
    sweep->add_option("--sizes", sw_sizes, "set sizes N");
    sweep->add_option("--dims", sw_dims, "string dimensions d");
    sweep->add_option("--ks", sw_ks, "thresholds k");
    sweep->add_option("--trials", sw_trials, "input pairs per configuration");
    sweep->add_option("--seed", sw_seed);
    sweep->add_option("--protocol", sw_protocol)->check(CLI::IsMember({"threshold-distance", "naive-thd"}));
    sweep->callback([&] {
        auto& os = out.stream();
        os << "N,d,k,max_queries,mean_queries,seed\n";
        for (const std::size_t n : sw_sizes) {
            for (const std::size_t d : sw_dims) {
                for (const int k : sw_ks) {
                    if (n < 2 || d < 1) throw domain_error("sweep needs N >= 2 and d >= 1");
                    std::mt19937_64 rng(mix_seed(sw_seed, n * 1315423911u + d * 2654435761u + k));
                    auto z = random_string_set(rng, n, d);
                    std::vector<std::pair<Bits, Bits>> pairs;
                    for (int t = 0; t < sw_trials; ++t) {
                        const Bits base = z[rng() % z.size()];
                        Bits mate = base;
                        const int dist = static_cast<int>(rng() % (2 * k + 2));
                        for (int f = 0; f < dist; ++f) {
                            const std::size_t p = rng() % d;
                            mate.set(p, !mate.get(p));
                        }
                        z.push_back(mate);
                        pairs.push_back({base, mate});
                    }
                    z = qslab::detail::sorted_unique(z);
                    long long total = 0;
                    int worst = 0;
                    for (const auto& [x, y] : pairs) {
                        CountingEqPort port;
                        if (sw_protocol == "threshold-distance") {
                            SeedStream seeds(mix_seed(sw_seed, 99));
                            threshold_distance_run(z, z, x, y, k, port, seeds, 64);
                        } else {
                            naive_thd_run(x, y, d, k, port);
                        }
                        total += port.count();
                        worst = std::max(worst, port.count());
                    }
                    os << n << ',' << d << ',' << k << ',' << worst << ','
                       << static_cast<double>(total) / static_cast<double>(pairs.size()) << ',' << sw_seed
                       << '\n';
                }
            }
        }
    });

    // ---- ramsey ------------------------------------------------------------
    auto* ramsey = app.add_subcommand("ramsey", "homogeneous-set search");
    ramsey->require_subcommand(1);
    auto* rfind = ramsey->add_subcommand("find", "search a coloring file for a homogeneous set");
    std::string rf_file;
    int rf_sigma = 3, rf_ground = 0, rf_arity = 0;
    rfind->add_option("--coloring", rf_file)->required();
    rfind->add_option("--sigma", rf_sigma)->required();
    rfind->add_option("--ground", rf_ground, "ground size (default: inferred)");
    rfind->add_option("--arity", rf_arity, "arity bound (default: inferred)");
    rfind->callback([&] {
        const auto coloring = load_coloring(rf_file, rf_ground, rf_arity);
        const auto found = find_homogeneous(coloring, rf_sigma);
        auto& os = out.stream();
        if (!found) {
            os << "NONE\n";
            return;
        }
        for (std::size_t i = 0; i < found->size(); ++i) os << (i ? " " : "") << (*found)[i];
        os << '\n';
    });

    // ---- reduce ------------------------------------------------------------
    auto* reduce = app.add_subcommand("reduce", "search or verify single-combiner reductions");
    reduce->require_subcommand(1);
    auto* rsearch = reduce->add_subcommand("search", "look for a blocky-query witness");
    std::string rs_target;
    int rs_c = 1;
    std::uint64_t rs_budget = 1'000'000;
    rsearch->add_option("--target", rs_target)->required();
    rsearch->add_option("--c", rs_c, "number of queries (c=2 needs an explicit budget)");
    rsearch->add_option("--budget", rs_budget);
    rsearch->callback([&] {
        const BitMatrix target = load_bitmatrix(rs_target);
        std::vector<BitMatrix> candidates = blocky_candidates(target);
        if (rs_c >= 2) candidates = all_blocky_matrices(target.rows(), target.cols(), rs_budget);
        const auto witness = search_reduction(target, candidates, rs_c, rs_budget);
        auto& os = out.stream();
        if (!witness) {
            os << "NONE\n";
            exit_code = 1;
            return;
        }
        os << witness->queries.size() << '\n';
        for (const auto& q : witness->queries) write_matrix_text(os, q);
        os << witness->f.to_bitstring() << '\n';
    });
    auto* rverify = reduce->add_subcommand("verify", "check a serialized witness against a target");
    std::string rv_target, rv_witness;
    rverify->add_option("--target", rv_target)->required();
    rverify->add_option("--witness", rv_witness)->required();
    rverify->callback([&] {
        const BitMatrix target = load_bitmatrix(rv_target);
        std::ifstream in(rv_witness);
        if (!in) throw domain_error("cannot open witness file " + rv_witness);
        std::size_t count = 0;
        if (!(in >> count)) throw domain_error("witness file must start with its query count");
        std::string rest;
        std::getline(in, rest);
        ReductionWitness w;
        for (std::size_t i = 0; i < count; ++i) w.queries.push_back(read_bitmatrix_text(in));
        std::string bits;
        while (std::getline(in, bits) && bits.empty()) {
        }
        w.f = TruthTable::from_bitstring(bits);
        const bool ok = verify_witness(target, w);
        out.stream() << (ok ? "valid" : "invalid") << '\n';
        if (!ok) exit_code = 1;
    });

    // ---- accept ------------------------------------------------------------
    auto* accept = app.add_subcommand("accept", "run the acceptance suite");
    accept->callback([&] {
        const auto results = qslab::acceptance::run_all(out.stream());
        for (const auto& r : results) {
            if (!r.passed) exit_code = 1;
        }
    });

    // ---- misc helpers -------------------------------------------------------
    auto* mkset = app.add_subcommand("mkset", "emit a random string set file");
    std::size_t ms_count = 16, ms_dim = 32;
    std::uint64_t ms_seed = 0;
    mkset->add_option("--count", ms_count)->required();
    mkset->add_option("--dim", ms_dim)->required();
    mkset->add_option("--seed", ms_seed);
    mkset->callback([&] {
        std::mt19937_64 rng(ms_seed);
        write_string_set(out.stream(), random_string_set(rng, ms_count, ms_dim));
    });

    // options of outer commands, e.g. --transcript and --out, may appear
    // after the leaf subcommand
    auto enable_fallthrough = [](auto&& self, CLI::App* node) -> void {
        for (CLI::App* sub : node->get_subcommands({})) {
            sub->fallthrough();
            self(self, sub);
        }
    };
    enable_fallthrough(enable_fallthrough, &app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
