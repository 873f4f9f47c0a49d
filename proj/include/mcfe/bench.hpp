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

#pragma once

// Wall-clock benchmark of the four algorithms over the named scaling cases.
//
// Each measurement is the mean over `repetitions` runs on a monotonic clock,
// preceded by one untimed warm-up run. Encryption is the total over all N
// clients; decryption is a single pair (1, 2) whose item sets half overlap.

#include <cstdint>
#include <string>
#include <vector>

namespace mcfe::bench {

struct BenchCase {
    std::string name;
    std::size_t n = 0;   // clients
    std::size_t l = 0;   // items per client
    std::size_t d = 10;  // attribute dimension
    std::size_t repetitions = 5;

    static BenchCase case_i();    // N = 5, l = 5
    static BenchCase case_ii();   // N = 10, l = 5
    static BenchCase case_iii();  // N = 10, l = 10
    // "I", "II" or "III"; throws std::invalid_argument otherwise.
    static BenchCase named(const std::string& name);
};

struct Timing {
    std::string algorithm;  // setup, keygen, encrypt, decrypt
    double mean_ms = 0;
    double stddev_ms = 0;
    std::vector<double> samples_ms;
};

struct BenchResult {
    BenchCase bench_case;
    std::vector<Timing> timings;

    const Timing& at(const std::string& algorithm) const;
    std::string to_json() const;
    // Fixed-width table: case, algorithm, mean ms, stddev ms.
    std::string to_table() const;
};

BenchResult run_bench(const BenchCase& c, std::uint64_t seed = 1);

// Benchmarks several cases with their repetitions interleaved round-robin
// (one warm-up per case first), so drift in machine speed affects every case
// alike and ratios between cases stay meaningful.
std::vector<BenchResult> run_bench_interleaved(const std::vector<BenchCase>& cases, std::uint64_t seed = 1);

}  // namespace mcfe::bench
