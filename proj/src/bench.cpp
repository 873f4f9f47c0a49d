/*
   Copyright 2026 The mcfe-si Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "mcfe/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "mcfe/codec.hpp"
#include "mcfe/random.hpp"
#include "mcfe/scheme.hpp"

namespace mcfe::bench {

namespace {

constexpr const char* kPolicy = "((attr:1 AND attr:2) OR THRESHOLD(2; attr:3, attr:4, attr:5)) AND NOT attr:revoked";

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Sample {
    double setup = 0;
    double keygen = 0;
    double encrypt = 0;
    double decrypt = 0;
};

// Inputs of one case, prepared outside the timed region.
struct Workload {
    BenchCase c;
    Drbg rng;
    std::vector<std::string> attributes;
    std::vector<std::vector<pairing::GT>> items;
    pairing::GT tag;
    policy::PolicyNode policy;
};

Workload make_workload(const BenchCase& c, std::uint64_t seed) {
    if (c.n < 2 || c.l == 0 || c.repetitions == 0) throw std::invalid_argument("bench: invalid case");
    if (c.d < 10) throw std::invalid_argument("bench: the fixed attribute set needs d >= 10");
    Workload w{c, Drbg::from_seed(seed, "bench/" + c.name), {}, {}, harness::make_tag("bench"),
               policy::parse_policy(kPolicy)};
    for (std::size_t i = 1; i <= 9; ++i) w.attributes.push_back("attr:" + std::to_string(i));
    // Consecutive clients share exactly l / 2 items.
    w.items.resize(c.n);
    for (std::size_t k = 0; k < c.n; ++k) {
        const std::size_t first = k * (c.l - c.l / 2);
        for (std::size_t i = 0; i < c.l; ++i)
            w.items[k].push_back(harness::encode_item("item-" + std::to_string(first + i)));
    }
    return w;
}

Sample run_once(Workload& w) {
    const BenchCase& c = w.c;
    const auto& attributes = w.attributes;
    const auto& items = w.items;
    const auto& tag = w.tag;
    const auto& policy = w.policy;
    Drbg& rng = w.rng;
    Sample s;
    auto t0 = Clock::now();
    const auto out = scheme::setup(c.d, c.n, rng);
    s.setup = elapsed_ms(t0);

    t0 = Clock::now();
    const auto sk = scheme::keygen(out.msk, out.pp, {1, 2}, policy, rng);
    s.keygen = elapsed_ms(t0);

    std::vector<scheme::ClientCiphertext> cts;
    cts.reserve(c.n);
    t0 = Clock::now();
    for (std::size_t k = 0; k < c.n; ++k)
        cts.push_back(scheme::encrypt(out.pp, attributes, tag, items[k], out.client_keys[k], rng));
    s.encrypt = elapsed_ms(t0);

    t0 = Clock::now();
    const auto result = scheme::decrypt(out.pp, cts[0], cts[1], sk);
    s.decrypt = elapsed_ms(t0);
    if (result.rejected() || result.matches.size() != c.l / 2)
        throw std::logic_error("bench: decryption did not recover the planted overlap");
    return s;
}

Timing summarize(std::string algorithm, std::vector<double> samples) {
    Timing t;
    t.algorithm = std::move(algorithm);
    const double n = static_cast<double>(samples.size());
    t.mean_ms = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double var = 0;
    for (double x : samples) var += (x - t.mean_ms) * (x - t.mean_ms);
    t.stddev_ms = samples.size() > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    t.samples_ms = std::move(samples);
    return t;
}

}  // namespace

BenchCase BenchCase::case_i() { return {"I", 5, 5}; }
BenchCase BenchCase::case_ii() { return {"II", 10, 5}; }
BenchCase BenchCase::case_iii() { return {"III", 10, 10}; }

BenchCase BenchCase::named(const std::string& name) {
    if (name == "I") return case_i();
    if (name == "II") return case_ii();
    if (name == "III") return case_iii();
    throw std::invalid_argument("unknown bench case '" + name + "' (expected I, II or III)");
}

const Timing& BenchResult::at(const std::string& algorithm) const {
    for (const auto& t : timings) {
        if (t.algorithm == algorithm) return t;
    }
    throw std::out_of_range("no timing for " + algorithm);
}

std::string BenchResult::to_json() const {
    nlohmann::json j;
    j["case"] = bench_case.name;
    j["n"] = bench_case.n;
    j["l"] = bench_case.l;
    j["d"] = bench_case.d;
    j["repetitions"] = bench_case.repetitions;
    for (const auto& t : timings) {
        j["timings"].push_back(
            {{"algorithm", t.algorithm}, {"mean_ms", t.mean_ms}, {"stddev_ms", t.stddev_ms}, {"samples_ms", t.samples_ms}});
    }
    return j.dump(2);
}

std::string BenchResult::to_table() const {
    std::string out;
    char line[128];
    std::snprintf(line, sizeof line, "%-6s %-9s %12s %12s\n", "case", "algorithm", "mean_ms", "stddev_ms");
    out += line;
    for (const auto& t : timings) {
        std::snprintf(line, sizeof line, "%-6s %-9s %12.3f %12.3f\n", bench_case.name.c_str(), t.algorithm.c_str(),
                      t.mean_ms, t.stddev_ms);
        out += line;
    }
    return out;
}

BenchResult run_bench(const BenchCase& c, std::uint64_t seed) { return run_bench_interleaved({c}, seed).front(); }

std::vector<BenchResult> run_bench_interleaved(const std::vector<BenchCase>& cases, std::uint64_t seed) {
    std::vector<Workload> loads;
    for (const auto& c : cases) loads.push_back(make_workload(c, seed));
    for (auto& w : loads) run_once(w);  // warm-up

    std::size_t rounds = 0;
    for (const auto& c : cases) rounds = std::max(rounds, c.repetitions);
    std::vector<std::vector<Sample>> samples(cases.size());
    for (std::size_t r = 0; r < rounds; ++r) {
        for (std::size_t i = 0; i < cases.size(); ++i) {
            if (r < cases[i].repetitions) samples[i].push_back(run_once(loads[i]));
        }
    }

    std::vector<BenchResult> out;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        std::vector<double> setup, keygen, encrypt, decrypt;
        for (const auto& s : samples[i]) {
            setup.push_back(s.setup);
            keygen.push_back(s.keygen);
            encrypt.push_back(s.encrypt);
            decrypt.push_back(s.decrypt);
        }
        BenchResult result{cases[i], {}};
        result.timings.push_back(summarize("setup", std::move(setup)));
        result.timings.push_back(summarize("keygen", std::move(keygen)));
        result.timings.push_back(summarize("encrypt", std::move(encrypt)));
        result.timings.push_back(summarize("decrypt", std::move(decrypt)));
        out.push_back(std::move(result));
    }
    return out;
}

}  // namespace mcfe::bench
