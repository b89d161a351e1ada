#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <thread>

#include "twinmat/compact_oracle.hpp"
#include "twinmat/contraction.hpp"
#include "twinmat/errors.hpp"
#include "twinmat/geom/point_locator.hpp"
#include "twinmat/submatrix_types.hpp"
#include "twinmat/zone_approx.hpp"

namespace twinmat::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Config {
    double beta = 1.0;
    double epsilon = 0.5;
    std::uint64_t seed = 0;
    std::string accounting = "packed";
    std::string out;
};

struct IoError : Error {
    using Error::Error;
};

RectangleDecomposition read_decomposition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    auto dec = parse_decomposition(in);
    dec.validate();
    return dec;
}

CompactOracle read_oracle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return CompactOracle::deserialize(in);
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream f(path, mode);
    if (!f) throw IoError("cannot write " + path);
    return f;
}

double elapsed(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

double percentile(std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    const auto idx = static_cast<std::size_t>(p * static_cast<double>(sorted.size() - 1) + 0.5);
    return sorted[std::min(idx, sorted.size() - 1)];
}

int cmd_gen(int n, int d, const Config& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.out.empty()) throw IoError("gen needs --out PREFIX");
    const auto g = generate(n, d, cfg.seed);
    const auto dec = extract_decomposition(g.matrix, g.sequence);
    const auto check = verify_sequence(g.matrix, g.sequence, d);

    auto dec_file = open_out(cfg.out + ".dec");
    write_decomposition(dec_file, dec);
    auto seq_file = open_out(cfg.out + ".seq");
    write_sequence(seq_file, g.sequence);
    auto mat_file = open_out(cfg.out + ".mat");
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) mat_file << (g.matrix.get(i, j) ? '1' : '0');
        mat_file << '\n';
    }

    const long long bound = static_cast<long long>(d) * (2LL * n - 2) + 1;
    json rec;
    rec["cmd"] = "gen";
    rec["n"] = n;
    rec["d"] = d;
    rec["seed"] = cfg.seed;
    rec["rects"] = dec.rects.size();
    rec["rect_bound"] = bound;
    rec["max_error"] = check.max_error;
    rec["witness_ok"] = check.ok;
    out << rec.dump() << '\n';
    err << "wrote " << cfg.out << ".{dec,seq,mat}: " << dec.rects.size() << " rectangles (bound " << bound << ")\n";
    return 0;
}

json build_record(const CompactOracle& o, Accounting mode, double seconds) {
    const auto report = o.bitsize(mode);
    json rec;
    rec["cmd"] = "build";
    rec["n"] = o.n();
    rec["n_padded"] = o.n_padded();
    rec["beta"] = o.beta();
    rec["levels"] = o.levels();
    rec["schedule"] = o.schedule().m;
    json objects = json::array(), widths = json::array(), bits = json::array();
    for (const auto& l : report.layers) {
        objects.push_back(l.objects);
        widths.push_back(l.id_width);
        bits.push_back(l.bits);
    }
    rec["objects"] = objects;
    rec["id_widths"] = widths;
    rec["layer_bits"] = bits;
    rec["accounting"] = to_string(mode);
    rec["total_bits"] = report.total_bits;
    rec["bottom_bits"] = report.bottom_bits;
    rec["bits_per_n"] = report.bits_per_n;
    rec["build_seconds"] = seconds;
    return rec;
}

int cmd_build(const std::string& dec_path, const Config& cfg, std::ostream& out, std::ostream& err) {
    const auto dec = read_decomposition(dec_path);
    const auto mode = parse_accounting(cfg.accounting);
    BuildOptions options;
    options.beta = cfg.beta;
    const auto start = Clock::now();
    const auto o = CompactOracle::build(dec, options);
    const double seconds = elapsed(start);
    if (!cfg.out.empty()) {
        auto f = open_out(cfg.out, std::ios::binary);
        o.serialize(f);
    }
    const auto rec = build_record(o, mode, seconds);
    out << rec.dump() << '\n';
    err << "built oracle n=" << o.n() << " levels=" << o.levels() << " bits=" << rec["total_bits"] << " in "
        << seconds << "s\n";
    return 0;
}

int cmd_query(const std::string& path, int i, int j, std::ostream& out) {
    const auto o = read_oracle(path);
    int hops = 0;
    const bool bit = o.query(i, j, &hops);
    out << (bit ? 1 : 0) << " hops=" << hops << '\n';
    return 0;
}

int cmd_verify(const std::string& oracle_path, const std::string& dec_path, std::ostream& out, std::ostream& err) {
    const auto o = read_oracle(oracle_path);
    const auto dec = read_decomposition(dec_path);
    if (dec.n != o.n()) throw IoError("oracle and decomposition sizes differ");
    const auto m = realize(dec);
    long long mismatches = 0;
    for (int i = 1; i <= m.n(); ++i)
        for (int j = 1; j <= m.n(); ++j) mismatches += o.query(i, j) != m.get(i, j);
    json rec;
    rec["cmd"] = "verify";
    rec["n"] = m.n();
    rec["checked"] = static_cast<long long>(m.n()) * m.n();
    rec["mismatches"] = mismatches;
    rec["ok"] = mismatches == 0;
    out << rec.dump() << '\n';
    if (mismatches) err << mismatches << " entries differ\n";
    return mismatches == 0 ? 0 : 1;
}

int cmd_bench(const std::string& path, long long queries, int threads, const Config& cfg, std::ostream& out,
              std::ostream& err) {
    if (queries < 1 || threads < 1) throw IoError("bench needs positive --queries and --threads");
    const auto o = read_oracle(path);
    std::vector<std::vector<double>> per_thread(static_cast<std::size_t>(threads));
    std::vector<long long> ones(static_cast<std::size_t>(threads), 0);
    auto worker = [&](int t) {
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(t));
        const long long share = queries / threads + (t < queries % threads ? 1 : 0);
        auto& lat = per_thread[static_cast<std::size_t>(t)];
        lat.reserve(static_cast<std::size_t>(share));
        for (long long q = 0; q < share; ++q) {
            const int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(o.n()));
            const int j = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(o.n()));
            const auto start = Clock::now();
            const bool bit = o.query(i, j);
            lat.push_back(std::chrono::duration<double, std::nano>(Clock::now() - start).count());
            ones[static_cast<std::size_t>(t)] += bit;
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();

    std::vector<double> all;
    for (auto& v : per_thread) all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end());
    double sum = 0;
    for (double v : all) sum += v;
    long long total_ones = 0;
    for (long long v : ones) total_ones += v;
    json rec;
    rec["cmd"] = "bench";
    rec["n"] = o.n();
    rec["levels"] = o.levels();
    rec["queries"] = queries;
    rec["threads"] = threads;
    rec["seed"] = cfg.seed;
    rec["ones"] = total_ones;
    rec["p50_ns"] = percentile(all, 0.5);
    rec["p99_ns"] = percentile(all, 0.99);
    rec["mean_ns"] = sum / static_cast<double>(all.size());
    out << rec.dump() << '\n';
    err << "p50 " << rec["p50_ns"] << " ns, p99 " << rec["p99_ns"] << " ns over " << queries << " queries\n";
    return 0;
}

int cmd_appendix_bench(const std::string& dec_path, long long queries, const Config& cfg, std::ostream& out,
                       std::ostream& err) {
    const auto dec = read_decomposition(dec_path);
    const auto m = realize(dec);
    const std::int64_t side = 2LL * dec.n;
    const auto shape = geom::shape_for_epsilon(static_cast<std::uint64_t>(side), cfg.epsilon);
    std::vector<geom::LocatedRect> regions;
    for (std::size_t t = 0; t < dec.rects.size(); ++t) {
        const auto& r = dec.rects[t];
        regions.push_back({2LL * (r.c1 - 1), 2LL * r.c2, 2LL * (r.r1 - 1), 2LL * r.r2, static_cast<std::uint32_t>(t)});
    }
    const auto start = Clock::now();
    const geom::PointLocator loc(side, side, regions, shape);
    const double build_s = elapsed(start);

    std::mt19937_64 rng(cfg.seed);
    int max_hops = 0;
    long long mismatches = 0;
    const auto qstart = Clock::now();
    for (long long q = 0; q < queries; ++q) {
        const int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(dec.n));
        const int j = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(dec.n));
        int hops = 0;
        const bool inside = loc.locate(2LL * j - 1, 2LL * i - 1, &hops).has_value();
        max_hops = std::max(max_hops, hops);
        mismatches += inside != m.get(i, j);
    }
    const double query_s = elapsed(qstart);
    json rec;
    rec["cmd"] = "appendix-bench";
    rec["n"] = dec.n;
    rec["epsilon"] = cfg.epsilon;
    rec["k"] = shape.k;
    rec["h"] = shape.h;
    rec["measured_depth"] = max_hops - 1;
    rec["path_nodes"] = max_hops;
    rec["nodes"] = loc.tree().node_count();
    rec["bits"] = loc.bitsize();
    rec["queries"] = queries;
    rec["mismatches"] = mismatches;
    rec["mean_query_ns"] = queries ? query_s * 1e9 / static_cast<double>(queries) : 0.0;
    rec["build_seconds"] = build_s;
    out << rec.dump() << '\n';
    err << "k=" << shape.k << " h=" << shape.h << " nodes=" << loc.tree().node_count() << '\n';
    return mismatches == 0 ? 0 : 1;
}

int cmd_cover_dump(const std::string& dec_path, int s, std::ostream& out) {
    const auto dec = read_decomposition(dec_path);
    const TypesOracle oracle(dec);
    const auto zc = zone_approximation(oracle, s);
    long long counts[5] = {0, 0, 0, 0, 0};
    for (const auto& e : zc.elements()) {
        json rec;
        rec["blocks"] = {e.blocks.r1, e.blocks.r2, e.blocks.c1, e.blocks.c2};
        rec["tag"] = to_string(e.tag);
        out << rec.dump() << '\n';
        ++counts[static_cast<int>(e.tag)];
    }
    json rec;
    rec["cmd"] = "cover-dump";
    rec["n"] = dec.n;
    rec["s"] = s;
    rec["elements"] = zc.elements().size();
    for (int t = 0; t < 5; ++t) rec[to_string(static_cast<CoverTag>(t))] = counts[t];
    rec["unguarded"] = unguarded_constants(zc, oracle).size();
    out << rec.dump() << '\n';
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compact entry oracle for binary matrices of bounded twin-width", "twinmat"};
    app.require_subcommand(1);
    Config cfg;
    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--beta", cfg.beta, "Bottom-layer cutoff parameter")->check(CLI::PositiveNumber);
        sub->add_option("--epsilon", cfg.epsilon, "k-ary tree depth parameter in (0, 2]")
            ->check(CLI::Range(1e-9, 2.0));
        sub->add_option("--seed", cfg.seed, "Random seed");
        sub->add_option("--accounting", cfg.accounting, "Bitsize accounting")->check(CLI::IsMember({"packed", "paper"}));
        sub->add_option("--out", cfg.out, "Output path or prefix");
    };

    int n = 0, d = 0, i = 0, j = 0, s = 1, threads = 1;
    long long queries = 100000;
    std::string dec_path, oracle_path;

    auto* gen = app.add_subcommand("gen", "Generate a d-twin-ordered matrix with its witness");
    gen->add_option("--n", n, "Side length")->required()->check(CLI::PositiveNumber);
    gen->add_option("--d", d, "Error-value bound")->required()->check(CLI::NonNegativeNumber);
    add_common(gen);

    auto* build = app.add_subcommand("build", "Build and serialize the oracle for a decomposition");
    build->add_option("decomposition", dec_path)->required();
    add_common(build);

    auto* query = app.add_subcommand("query", "Answer one entry query");
    query->add_option("oracle", oracle_path)->required();
    query->add_option("i", i)->required();
    query->add_option("j", j)->required();
    add_common(query);

    auto* verify = app.add_subcommand("verify", "Compare every entry of an oracle with a decomposition");
    verify->add_option("oracle", oracle_path)->required();
    verify->add_option("decomposition", dec_path)->required();
    add_common(verify);

    auto* bench = app.add_subcommand("bench", "Query latency over random entries");
    bench->add_option("oracle", oracle_path)->required();
    bench->add_option("--queries", queries, "Number of queries");
    bench->add_option("--threads", threads, "Worker threads");
    add_common(bench);

    auto* appendix = app.add_subcommand("appendix-bench", "Persistent k-ary tree point location over a decomposition");
    appendix->add_option("decomposition", dec_path)->required();
    appendix->add_option("--queries", queries, "Number of queries");
    add_common(appendix);

    auto* cover = app.add_subcommand("cover-dump", "Print the zone cover of the s-regular division");
    cover->add_option("decomposition", dec_path)->required();
    cover->add_option("--s", s, "Zone side")->check(CLI::PositiveNumber);
    add_common(cover);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) return cmd_gen(n, d, cfg, out, err);
        if (*build) return cmd_build(dec_path, cfg, out, err);
        if (*query) return cmd_query(oracle_path, i, j, out);
        if (*verify) return cmd_verify(oracle_path, dec_path, out, err);
        if (*bench) return cmd_bench(oracle_path, queries, threads, cfg, out, err);
        if (*appendix) return cmd_appendix_bench(dec_path, queries, cfg, out, err);
        if (*cover) return cmd_cover_dump(dec_path, s, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace twinmat::cli
