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

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "mcfe/codec.hpp"
#include "mcfe/harness.hpp"
#include "mcfe/oracle.hpp"
#include "mcfe/random.hpp"
#include "mcfe/store.hpp"
#include "mcfe/wire.hpp"

using namespace mcfe;
using namespace mcfe::harness;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory under the system temp dir, removed on exit.
class TempDir {
  public:
    explicit TempDir(const std::string& name) {
        path_ = fs::temp_directory_path() / ("mcfe-test-" + name + "-" + std::to_string(::getpid()));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

  private:
    fs::path path_;
};

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    for (const auto& l : lines) out << l << "\n";
}

pairing::Bytes sample_ciphertext(std::size_t k, const std::vector<std::string>& attrs, const std::string& item) {
    auto rng = Drbg::from_seed(300 + k, item);
    static const auto sys = [] {
        auto r = Drbg::from_seed(300, "store");
        return scheme::setup(4, 3, r);
    }();
    std::vector<GT> items = {encode_item(item)};
    const auto ct = scheme::encrypt(sys.pp, attrs, make_tag("L"), items, sys.client_keys[k - 1], rng);
    return wire::encode(ct, sys.pp);
}

}  // namespace

TEST_CASE("encode_item and make_tag: determinism and separation") {
    CHECK(encode_item("sample-17") == encode_item("sample-17"));
    CHECK(make_tag("round-1") == make_tag("round-1"));
    CHECK_FALSE(make_tag("round-1") == make_tag("round-2"));
    CHECK_FALSE(make_tag("x") == encode_item("x"));
    CHECK(encode_item("x") == GT::generator_pow(pairing::hash_to_scalar(pairing::as_bytes("x"), kItemDomain)));
    CHECK_THROWS_AS(encode_item(""), std::invalid_argument);
    CHECK_THROWS_AS(make_tag(""), std::invalid_argument);
    CHECK(LabelDescriptor::from("round-1").tag == make_tag("round-1"));
}

TEST_CASE("distinct items and labels never collide over 10^4 inputs") {
    std::unordered_set<std::string> items;
    std::unordered_set<std::string> tags;
    for (int i = 0; i < 10000; ++i) {
        const auto a = encode_item("id-" + std::to_string(i)).to_bytes();
        const auto b = make_tag("round-" + std::to_string(i)).to_bytes();
        items.emplace(a.begin(), a.end());
        tags.emplace(b.begin(), b.end());
    }
    CHECK(items.size() == 10000);
    CHECK(tags.size() == 10000);
}

TEST_CASE("ItemCodec decodes what it encoded") {
    ItemCodec codec;
    const auto a = codec.encode("alpha");
    codec.encode("beta");
    codec.encode("alpha");
    CHECK(codec.size() == 2);
    CHECK(codec.decode(a) == "alpha");
    CHECK_FALSE(codec.decode(encode_item("gamma")).has_value());
}

TEST_CASE("store: round trip, replacement and errors") {
    TempDir dir("store");
    const std::vector<std::string> attrs = {"A"};
    const auto p1 = sample_ciphertext(1, attrs, "one");
    const auto p2 = sample_ciphertext(1, attrs, "two");
    {
        CiphertextStore store(dir.path());
        const auto rec = store.upload({1, "L", attrs, p1, 0});
        CHECK(rec.uploaded_at_ms > 0);
        CHECK(store.fetch(1, "L").payload == p1);
        CHECK(store.fetch(1, "L").attributes == attrs);
        store.upload({1, "L", attrs, p2, 0});
        CHECK(store.size() == 1);
        CHECK(store.fetch(1, "L").payload == p2);

        try {
            store.fetch(2, "L");
            FAIL("expected a missing-record error");
        } catch (const StoreError& e) {
            CHECK(e.kind() == StoreError::Kind::kMissing);
        }
        CHECK_THROWS_AS(store.upload({2, "L", attrs, p1, 0}), std::invalid_argument);
        CHECK_THROWS_AS(store.upload({1, "L", {"B"}, p1, 0}), std::invalid_argument);
        CHECK_THROWS_AS(store.upload({1, "L", attrs, {1, 2, 3}, 0}), std::invalid_argument);
    }
    // A new instance, as after a restart, sees the same bytes.
    CiphertextStore reopened(dir.path());
    CHECK(reopened.contains(1, "L"));
    CHECK(reopened.fetch(1, "L").payload == p2);

    // Tamper with the record file.
    for (const auto& entry : fs::directory_iterator(dir.path() / "records")) {
        std::fstream f(entry.path(), std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(40);
        f.put('\x7f');
    }
    try {
        reopened.fetch(1, "L");
        FAIL("expected a corrupt-record error");
    } catch (const StoreError& e) {
        CHECK(e.kind() == StoreError::Kind::kCorrupt);
    }
}

TEST_CASE("store: concurrent uploads of distinct keys all land") {
    TempDir dir("concurrent");
    CiphertextStore store(dir.path());
    std::vector<pairing::Bytes> payloads;
    for (std::size_t k = 1; k <= 3; ++k) payloads.push_back(sample_ciphertext(k, {"A"}, "item"));
    std::vector<std::thread> workers;
    for (std::size_t k = 1; k <= 3; ++k) {
        for (int round = 0; round < 4; ++round) {
            workers.emplace_back([&, k, round] {
                store.upload({k, "r" + std::to_string(round), {"A"}, payloads[k - 1], 0});
            });
        }
    }
    for (auto& t : workers) t.join();
    CHECK(store.size() == 12);
    for (std::size_t k = 1; k <= 3; ++k) CHECK(store.fetch(k, "r3").payload == payloads[k - 1]);
}

TEST_CASE("read_item_file: lines, blanks and duplicates") {
    TempDir dir("items");
    std::ofstream(dir.path() / "a.txt") << "x\r\n\ny\nz\n";
    CHECK(read_item_file(dir.path() / "a.txt") == std::vector<std::string>{"x", "y", "z"});
    write_lines(dir.path() / "b.txt", {"x", "y", "x"});
    CHECK_THROWS_AS(read_item_file(dir.path() / "b.txt"), std::invalid_argument);
    CHECK_THROWS(read_item_file(dir.path() / "missing.txt"));
}

TEST_CASE("deployment rejects labels that are not file-name safe") {
    Deployment dep("/nonexistent");
    CHECK_THROWS_AS(dep.ciphertext(1, "../x"), std::invalid_argument);
    CHECK_THROWS_AS(dep.ciphertext(1, ""), std::invalid_argument);
    CHECK(dep.ciphertext(1, "round-1.a_b").filename() == "round-1.a_b.ct");
}

TEST_CASE("run_alignment reports exactly the overlap of the item files") {
    TempDir dir("align");
    const std::vector<std::vector<std::string>> files = {
        {"s1", "s2", "s3", "s4"}, {"s9", "s3", "s1"}, {"s2", "s5"}};
    AlignmentConfig c;
    c.dir = dir.path() / "deploy";
    c.d = 5;
    for (std::size_t k = 0; k < files.size(); ++k) {
        const auto path = dir.path() / ("client" + std::to_string(k + 1) + ".txt");
        write_lines(path, files[k]);
        c.clients.push_back(path);
    }
    c.attributes = {"Year:2024", "Department:history"};
    c.label = "round-1";
    c.policy = "'Year:2024' AND 'Department:history' NOT 'Department:biology'";
    c.pair = {1, 2};
    c.seed = 9;

    SUBCASE("satisfying attributes") {
        const auto report = run_alignment(c);
        CHECK(report.status == AlignmentReport::Status::kOk);
        const auto expected = oracle::sif(files, oracle::QuerySet({{1, 2}}));
        std::set<std::string> got;
        for (const auto& row : report.rows) {
            got.insert(row.item);
            CHECK(files[0][row.eta_w - 1] == row.item);
            CHECK(files[1][row.eta_v - 1] == row.item);
        }
        CHECK(got == expected[0]);
        CHECK(report.to_text() ==
              "status ok\npair 1,2\nlabel round-1\nmatches 2\nmatch 1 3 s1\nmatch 3 2 s3\n");
        // Artifacts land in the documented layout.
        const Deployment dep(c.dir);
        CHECK(fs::exists(dep.public_params()));
        CHECK(fs::exists(dep.master_secret()));
        CHECK(fs::exists(dep.client_key(3)));
        CHECK(fs::exists(dep.decryption_key({1, 2})));
        CHECK(CiphertextStore(dep.store()).size() == 3);
    }
    SUBCASE("negated attribute present") {
        c.attributes.push_back("Department:biology");
        const auto report = run_alignment(c);
        CHECK(report.status == AlignmentReport::Status::kPolicyUnsatisfied);
        CHECK(report.rows.empty());
    }
    SUBCASE("empty overlap") {
        c.pair = {2, 3};
        const auto report = run_alignment(c);
        CHECK(report.status == AlignmentReport::Status::kOk);
        CHECK(report.rows.empty());
    }
    SUBCASE("invalid pair") {
        c.pair = {2, 4};
        CHECK_THROWS_AS(run_alignment(c), std::invalid_argument);
    }
}

TEST_CASE("alignment report equals the oracle on randomized corpora") {
    TempDir dir("randomized");
    for (const auto& t : oracle::property_corpus(301, 12)) {
        if (!t.satisfied) continue;
        AlignmentConfig c;
        c.dir = dir.path() / std::to_string(t.seed);
        c.d = t.d;
        for (std::size_t k = 0; k < t.n; ++k) {
            const auto path = c.dir / ("items-" + std::to_string(k + 1));
            fs::create_directories(c.dir);
            write_lines(path, t.items[k]);
            c.clients.push_back(path);
        }
        c.attributes = t.attributes;
        c.label = t.label;
        c.policy = t.policy.to_string();
        c.pair = {1, t.n};
        c.seed = t.seed;
        const auto report = run_alignment(c);
        REQUIRE(report.status == AlignmentReport::Status::kOk);
        std::set<std::string> got;
        for (const auto& row : report.rows) got.insert(row.item);
        CHECK(got == oracle::sif(t.items, oracle::QuerySet({{1, t.n}}))[0]);
    }
}

TEST_CASE("config parsing") {
    const auto c = AlignmentConfig::from_json(
        R"({"dir":"dep","d":6,"clients":["a.txt","/abs/b.txt"],"attributes":["A"],"label":"r","policy":"A","pair":[1,2],"seed":5})",
        "/base");
    CHECK(c.dir == fs::path("/base/dep"));
    CHECK(c.clients[0] == fs::path("/base/a.txt"));
    CHECK(c.clients[1] == fs::path("/abs/b.txt"));
    CHECK(c.pair == scheme::IndexFunction{1, 2});
    CHECK(c.seed == 5);
    CHECK_THROWS_AS(AlignmentConfig::from_json(R"({"dir":"x"})"), std::invalid_argument);
    CHECK_THROWS_AS(AlignmentConfig::from_json("not json"), std::invalid_argument);
}
