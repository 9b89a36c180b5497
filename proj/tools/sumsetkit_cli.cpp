// Command-line front end: solve / all / mod / count / card / witness /
// bottleneck / cover / bench over whitespace-separated multiset files.
//
// Exit codes: 0 ok, 2 input error, 3 unrealizable target, 4 cross-algorithm
// checksum mismatch.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "sumsetkit/applications.hpp"
#include "sumsetkit/baselines.hpp"
#include "sumsetkit/cyclic_engine.hpp"
#include "sumsetkit/integer_engine.hpp"
#include "sumsetkit/witness.hpp"

namespace {

using namespace sumsetkit;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitUnrealizable = 3;
constexpr int kExitMismatch = 4;

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Value> residues_of(const MultisetInput& input, Value m) {
    std::vector<Value> out;
    for (const auto& e : input.entries())
        for (std::uint64_t k = 0; k < e.multiplicity; ++k) out.push_back(e.value % m);
    std::sort(out.begin(), out.end());
    // zeros vanish in Z_m; repeated nonzero residues are not a set
    out.erase(out.begin(), std::lower_bound(out.begin(), out.end(), Value(1)));
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw ParseError("input is not a set of residues modulo m (duplicate after reduction)");
    return out;
}

std::vector<Value> set_of(const MultisetInput& input) {
    std::vector<Value> out;
    for (const auto& e : input.entries()) {
        if (e.multiplicity > 1)
            throw ParseError("input must be a set (duplicate value)");
        out.push_back(e.value);
    }
    return out;
}

// FNV-1a over the members of a sum set, little-endian 64-bit each.
std::uint64_t checksum(const SumSet& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (Value v : s.members())
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (v >> (8 * byte)) & 0xff;
            h *= 1099511628211ull;
        }
    return h;
}

// Documented bench generator: Knuth LCG, state' = state * 6364136223846793005
// + 1442695040888963407 (mod 2^64); each draw advances once and yields
// 1 + (state' >> 33) % max_value.
struct BenchRng {
    std::uint64_t state;
    explicit BenchRng(std::uint64_t seed) : state(seed) {}
    Value draw(Value max_value) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return 1 + (state >> 33) % max_value;
    }
};

int cmd_solve(const std::string& file, Value target, const std::string& algo) {
    const Strategy strategy = parse_strategy(algo);
    const MultisetInput input = parse_multiset(read_file(file));
    const SumSet sums = all_subset_sums(input, target, strategy);
    std::cout << (sums.contains(target) ? "yes" : "no") << "\n";
    return kExitOk;
}

int cmd_all(const std::string& file, Value bound, const std::string& algo) {
    const Strategy strategy = parse_strategy(algo);
    const MultisetInput input = parse_multiset(read_file(file));
    const SumSet sums = all_subset_sums(input, bound, strategy);
    for (Value v : sums.members()) std::cout << v << "\n";
    return kExitOk;
}

int cmd_mod(const std::string& file, Value modulus) {
    if (modulus < 1) throw ParseError("modulus must be >= 1");
    const MultisetInput input = parse_multiset(read_file(file));
    const SumSet sums = mod_subset_sums(residues_of(input, modulus), modulus);
    for (Value v : sums.members()) std::cout << v << "\n";
    return kExitOk;
}

int cmd_count(const std::string& file, Value bound, bool exact) {
    const MultisetInput input = parse_multiset(read_file(file));
    const auto mode = exact ? CountVector::Mode::kExact : CountVector::Mode::kModular;
    const CountVector counts = count_sums(set_of(input), bound, mode);
    for (Value x = 0; x <= bound; ++x) {
        if (exact) {
            if (counts.exact(x) != 0) std::cout << x << " " << counts.exact(x) << "\n";
        } else {
            if (counts.residue(x) != 0) std::cout << x << " " << counts.residue(x) << "\n";
        }
    }
    return kExitOk;
}

int cmd_card(const std::string& file, Value bound) {
    const MultisetInput input = parse_multiset(read_file(file));
    const CardSumSet grid = card_sums(set_of(input), bound);
    for (const auto& [s, j] : grid.cells()) std::cout << s << " " << j << "\n";
    return kExitOk;
}

// lexicographically smallest subset with the target sum, built by greedy
// feasibility checks against the DP
std::vector<Value> canonical_witness(const MultisetInput& input, Value u, Value target) {
    Trace trace;
    all_subset_sums(input, u, Strategy::kAuto, &trace);
    std::vector<Value> any = recover_subset(trace, target); // throws if unrealizable

    std::vector<Value> avail;
    for (const auto& e : input.entries())
        for (std::uint64_t k = 0; k < e.multiplicity; ++k) avail.push_back(e.value);
    std::sort(avail.begin(), avail.end());

    std::vector<Value> chosen;
    Value rest = target;
    while (rest > 0) {
        for (std::size_t i = 0; i < avail.size(); ++i) {
            const Value v = avail[i];
            if (v > rest) break;
            std::vector<Value> remaining(avail.begin(), avail.end());
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
            const MultisetInput rem = MultisetInput::from_values(remaining);
            if (baselines::bellman_dp(rem, rest - v).contains(rest - v)) {
                chosen.push_back(v);
                avail = std::move(remaining);
                rest -= v;
                break;
            }
        }
    }
    return chosen;
}

int cmd_witness(const std::string& file, Value bound, Value target) {
    const MultisetInput input = parse_multiset(read_file(file));
    if (target > bound) throw UnrealizableError("target exceeds the bound");
    const std::vector<Value> subset = canonical_witness(input, bound, target);
    for (std::size_t i = 0; i < subset.size(); ++i)
        std::cout << subset[i] << (i + 1 < subset.size() ? " " : "");
    std::cout << "\n";
    return kExitOk;
}

int cmd_bottleneck(const std::string& file) {
    const WeightedGraph g = WeightedGraph::parse(read_file(file));
    const PartitionResult result = bottleneck_partition(g);
    std::cout << result.bottleneck << "\n";
    const auto side = result.side_one();
    for (std::size_t i = 0; i < side.size(); ++i)
        std::cout << side[i] << (i + 1 < side.size() ? " " : "");
    std::cout << "\n";
    return kExitOk;
}

int cmd_cover(Value modulus, Value length) {
    const ZmCover cover = cover_zm(modulus, length);
    for (const Segment& seg : cover.segments)
        std::cout << seg.generator << " " << seg.length << "\n";
    return kExitOk;
}

int cmd_bench(std::uint64_t n, Value max_value, Value bound, std::uint64_t seed,
              const std::string& algos_csv, std::uint64_t trials) {
    std::vector<std::string> names;
    {
        std::stringstream ss(algos_csv);
        std::string item;
        while (std::getline(ss, item, ',')) names.push_back(item);
    }
    std::vector<Strategy> strategies;
    for (const auto& name : names) strategies.push_back(parse_strategy(name));
    if (strategies.empty()) throw ParseError("bench needs at least one algorithm");

    std::cout << "trial algo time_ms checksum\n";
    BenchRng rng(seed);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::vector<MultisetEntry> entries;
        for (std::uint64_t i = 0; i < n; ++i) entries.push_back({rng.draw(max_value), 1});
        const MultisetInput input = MultisetInput::from_entries(std::move(entries));

        std::uint64_t reference = 0;
        bool have_reference = false;
        for (std::size_t a = 0; a < strategies.size(); ++a) {
            const auto t0 = std::chrono::steady_clock::now();
            const SumSet sums = all_subset_sums(input, bound, strategies[a]);
            const auto t1 = std::chrono::steady_clock::now();
            const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            const std::uint64_t digest = checksum(sums);
            std::cout << trial << " " << names[a] << " " << static_cast<long long>(ms + 0.5)
                      << " " << std::hex << digest << std::dec << "\n";
            if (!have_reference) {
                reference = digest;
                have_reference = true;
            } else if (digest != reference) {
                std::cerr << "checksum mismatch between algorithms\n";
                return kExitMismatch;
            }
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subset-sum toolkit"};
    app.require_subcommand(1);

    std::string file, algo = "auto", algos = "dp,main";
    Value target = 0, bound = 0, modulus = 0, length = 0, max_value = 1000;
    std::uint64_t n = 100, seed = 1, trials = 1;
    bool exact = false;

    auto* solve = app.add_subcommand("solve", "decide if a subset sums to the target");
    solve->add_option("file", file)->required();
    solve->add_option("--target,-t", target)->required();
    solve->add_option("--algo", algo);

    auto* all = app.add_subcommand("all", "print all realizable sums up to the bound");
    all->add_option("file", file)->required();
    all->add_option("--bound,-u", bound)->required();
    all->add_option("--algo", algo);

    auto* mod = app.add_subcommand("mod", "print all realizable sums modulo m");
    mod->add_option("file", file)->required();
    mod->add_option("--modulus,-m", modulus)->required();

    auto* count = app.add_subcommand("count", "print \"x count\" for realizable sums");
    count->add_option("file", file)->required();
    count->add_option("--bound,-u", bound)->required();
    count->add_flag("--exact", exact);

    auto* card = app.add_subcommand("card", "print \"sum card\" pairs");
    card->add_option("file", file)->required();
    card->add_option("--bound,-u", bound)->required();

    auto* witness = app.add_subcommand("witness", "print a subset reaching the target");
    witness->add_option("file", file)->required();
    witness->add_option("--bound,-u", bound)->required();
    witness->add_option("--target,-t", target)->required();

    auto* bottleneck = app.add_subcommand("bottleneck", "balanced partition, min bottleneck");
    bottleneck->add_option("graphfile", file)->required();

    auto* cover = app.add_subcommand("cover", "segments of given length covering Z_m");
    cover->add_option("--modulus,-m", modulus)->required();
    cover->add_option("--length,-l", length)->required();

    auto* bench = app.add_subcommand("bench", "timing table over seeded instances");
    bench->add_option("--n", n);
    bench->add_option("--max-value", max_value);
    bench->add_option("--bound,-u", bound)->required();
    bench->add_option("--seed", seed);
    bench->add_option("--algo", algos);
    bench->add_option("--trials", trials);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*solve) return cmd_solve(file, target, algo);
        if (*all) return cmd_all(file, bound, algo);
        if (*mod) return cmd_mod(file, modulus);
        if (*count) return cmd_count(file, bound, exact);
        if (*card) return cmd_card(file, bound);
        if (*witness) return cmd_witness(file, bound, target);
        if (*bottleneck) return cmd_bottleneck(file);
        if (*cover) return cmd_cover(modulus, length);
        if (*bench) return cmd_bench(n, max_value, bound, seed, algos, trials);
    } catch (const UnrealizableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnrealizable;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
