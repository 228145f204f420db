#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "cycsos/refute.hpp"

using namespace cycsos;

namespace {

std::string read_golden(const std::string& name) {
    std::ifstream in(std::string(CYCSOS_GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("factorization tables match the frozen renderings") {
    for (int t = 1; t <= 5; ++t) {
        INFO("table " << t);
        CHECK(verify_table(t, 3, 5) ==
              read_golden("table" + std::to_string(t) + "_k3_l5.txt"));
    }
    for (int t = 6; t <= 8; ++t) {
        INFO("table " << t);
        CHECK(verify_table(t, 3, 3) ==
              read_golden("table" + std::to_string(t) + "_k3_l3.txt"));
    }
}

TEST_CASE("table words agree with the probe words of the refutations") {
    // the rendered tables describe exactly the words the derivations consume
    CHECK(table_word(1, 3, 5) == Word::parse("A^10B^6"));
    CHECK(table_word(6, 3, 3) == Word::parse("A^6B^6"));
    CHECK(table_word(8, 3, 3) == Word::parse("A^2B^2A^2B^2A^2B^2"));
    CHECK_THROWS_AS(table_word(9, 3, 5), std::invalid_argument);
    CHECK_THROWS_AS(verify_table(1, 3, 4), std::invalid_argument);
    CHECK_THROWS_AS(verify_table(6, 3, 5), std::invalid_argument);
}

TEST_CASE("tables render at other parameters too") {
    // not frozen, but must be internally consistent: every table mentions its
    // own word's expanded form
    for (auto [k, l] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {3, 6}, {4, 5}, {5, 7}}) {
        for (int t = 1; t <= 5; ++t) {
            std::string body = verify_table(t, k, l);
            CHECK_FALSE(body.empty());
        }
    }
}
