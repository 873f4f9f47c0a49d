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

// Command-line front end for a file-backed deployment.
//
//   mcfe setup   --dir D --d 10 --clients 3 --seed 7
//   mcfe keygen  --dir D --pair 1,2 --policy "A AND NOT B" --seed 7
//   mcfe encrypt --dir D --client 1 --items ids.txt --attrs A,C --label round-1 --seed 7
//   mcfe upload  --dir D --client 1 --label round-1
//   mcfe align   --dir D --pair 1,2 --label round-1 --items ids.txt
//   mcfe run     --config alignment.json
//   mcfe bench   --case all --json

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcfe/bench.hpp"
#include "mcfe/harness.hpp"

namespace {

using mcfe::harness::AlignmentReport;

mcfe::scheme::IndexFunction parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--pair", "expected w,v");
    try {
        return {std::stoul(text.substr(0, comma)), std::stoul(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--pair", "expected two integers w,v");
    }
}

int report_exit_code(const AlignmentReport& r) { return r.status == AlignmentReport::Status::kOk ? 0 : 3; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pairwise set intersection under non-monotonic attribute policies"};
    app.require_subcommand(1);

    std::string dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--dir", dir, "Deployment directory")->capture_default_str();
        cmd->add_option_function<std::uint64_t>(
            "--seed",
            [&](std::uint64_t s) {
                seed = s;
                seed_set = true;
            },
            "Seed for reproducible runs (default: system entropy)");
    };
    auto effective_seed = [&] {
        if (seed_set) return seed;
        std::random_device rd;
        return (std::uint64_t{rd()} << 32) | rd();
    };

    std::size_t d = 10;
    std::size_t clients = 2;
    auto* setup = app.add_subcommand("setup", "Generate public parameters and all keys");
    add_common(setup);
    setup->add_option("--d", d, "Attribute dimension")->required()->check(CLI::Range(2, 4096));
    setup->add_option("--clients", clients, "Number of clients N")->required()->check(CLI::Range(2, 1 << 16));

    std::string pair_text;
    std::string policy_text;
    auto* keygen = app.add_subcommand("keygen", "Issue a decryption key for a client pair");
    add_common(keygen);
    keygen->add_option("--pair", pair_text, "Client pair w,v with w < v")->required();
    keygen->add_option("--policy", policy_text, "Access policy")->required();

    std::size_t client = 0;
    std::string items_path;
    std::vector<std::string> attrs;
    std::string label;
    auto* encrypt = app.add_subcommand("encrypt", "Encrypt a client's item file");
    add_common(encrypt);
    encrypt->add_option("--client", client, "Client index k")->required();
    encrypt->add_option("--items", items_path, "Item file, one item per line")->required();
    encrypt->add_option("--attrs", attrs, "Attribute set")->delimiter(',');
    encrypt->add_option("--label", label, "Round label")->required();

    auto* upload = app.add_subcommand("upload", "Push a client's ciphertext to the store");
    add_common(upload);
    upload->add_option("--client", client, "Client index k")->required();
    upload->add_option("--label", label, "Round label")->required();

    auto* align = app.add_subcommand("align", "Fetch a pair's ciphertexts and intersect them");
    add_common(align);
    align->add_option("--pair", pair_text, "Client pair w,v with w < v")->required();
    align->add_option("--label", label, "Round label")->required();
    align->add_option("--items", items_path, "Items of client w, used to name the matches");

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run a whole alignment from a JSON config");
    run->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);

    std::string case_name = "I";
    std::size_t reps = 5;
    bool as_json = false;
    auto* bench = app.add_subcommand("bench", "Time setup, keygen, encrypt and decrypt");
    bench->add_option("--case", case_name, "I, II, III or all (interleaved)")
        ->check(CLI::IsMember({"I", "II", "III", "all"}));
    bench->add_option("--reps", reps, "Timed repetitions")->check(CLI::PositiveNumber);
    bench->add_option("--seed", seed, "Seed");
    bench->add_flag("--json", as_json, "Emit JSON instead of a table");

    CLI11_PARSE(app, argc, argv);

    try {
        const mcfe::harness::Deployment dep(dir);
        if (*setup) {
            dep.setup(d, clients, effective_seed());
            std::cout << "setup d=" << d << " clients=" << clients << " dir=" << dep.root().string() << "\n";
        } else if (*keygen) {
            const auto f = parse_pair(pair_text);
            dep.keygen(f, policy_text, effective_seed());
            std::cout << "keygen " << dep.decryption_key(f).string() << "\n";
        } else if (*encrypt) {
            dep.encrypt(client, mcfe::harness::read_item_file(items_path), attrs, label, effective_seed());
            std::cout << "encrypt " << dep.ciphertext(client, label).string() << "\n";
        } else if (*upload) {
            dep.upload(client, label);
            std::cout << "upload client=" << client << " label=" << label << "\n";
        } else if (*align) {
            std::vector<std::string> dictionary;
            if (!items_path.empty()) dictionary = mcfe::harness::read_item_file(items_path);
            const auto report = mcfe::harness::align(dep, parse_pair(pair_text), label, dictionary);
            std::cout << report.to_text();
            return report_exit_code(report);
        } else if (*run) {
            std::ifstream in(config_path);
            std::stringstream text;
            text << in.rdbuf();
            const auto config = mcfe::harness::AlignmentConfig::from_json(
                text.str(), std::filesystem::path(config_path).parent_path());
            const auto report = mcfe::harness::run_alignment(config);
            std::cout << report.to_text();
            return report_exit_code(report);
        } else if (*bench) {
            std::vector<mcfe::bench::BenchCase> cases;
            for (const char* name : {"I", "II", "III"}) {
                if (case_name == "all" || case_name == name) cases.push_back(mcfe::bench::BenchCase::named(name));
            }
            for (auto& c : cases) c.repetitions = reps;
            const auto results = mcfe::bench::run_bench_interleaved(cases, seed);
            if (as_json) {
                std::cout << "[";
                for (std::size_t i = 0; i < results.size(); ++i) std::cout << (i ? ",\n" : "\n") << results[i].to_json();
                std::cout << "\n]\n";
            } else {
                for (const auto& r : results) std::cout << r.to_table();
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
