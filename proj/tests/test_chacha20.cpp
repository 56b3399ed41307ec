#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "demis/chacha20.hpp"
#include "demis/errors.hpp"
#include "demis/prng.hpp"
#include "test_util.hpp"

using namespace demis;
using namespace demis::test;

namespace {

chacha::Key rfc_key() {
    chacha::Key key;
    for (int i = 0; i < 32; ++i) key[std::size_t(i)] = static_cast<std::uint8_t>(i);
    return key;
}

chacha::Nonce nonce_of(const std::string& hex) {
    const auto bytes = hex_bytes(hex);
    chacha::Nonce n{};
    std::copy(bytes.begin(), bytes.end(), n.begin());
    return n;
}

}  // namespace

// IETF test vector: quarter round on 4 words.
TEST_CASE("quarter round matches the published vector") {
    chacha::State s{};
    s[0] = 0x11111111;
    s[1] = 0x01020304;
    s[2] = 0x9b8d6f43;
    s[3] = 0x01234567;
    chacha::quarter_round(s, 0, 1, 2, 3);
    CHECK(s[0] == 0xea2a92f4);
    CHECK(s[1] == 0xcb1cf8ce);
    CHECK(s[2] == 0x4581472e);
    CHECK(s[3] == 0x5881c4bb);
}

TEST_CASE("quarter round touches only its four words") {
    chacha::State s;
    std::iota(s.begin(), s.end(), 0x1000u);
    chacha::State before = s;
    chacha::quarter_round(s, 0, 4, 8, 12);
    for (int i = 0; i < 16; ++i) {
        if (i == 0 || i == 4 || i == 8 || i == 12) continue;
        CHECK(s[std::size_t(i)] == before[std::size_t(i)]);
    }
}

TEST_CASE("quarter round is deterministic") {
    chacha::State a{}, b{};
    a[3] = b[3] = 77;
    chacha::quarter_round(a, 3, 7, 11, 15);
    chacha::quarter_round(b, 3, 7, 11, 15);
    CHECK(a == b);
}

TEST_CASE("quarter round rejects bad indices") {
    chacha::State s{};
    CHECK_THROWS_AS(chacha::quarter_round(s, 0, 1, 2, 16), InputError);
    CHECK_THROWS_AS(chacha::quarter_round(s, -1, 1, 2, 3), InputError);
    CHECK_THROWS_AS(chacha::quarter_round(s, 0, 1, 2, 2), InputError);
}

// IETF test vector: one keystream block, counter 1.
TEST_CASE("block function matches the published vector") {
    const auto ks = chacha::block(rfc_key(), 1, nonce_of("000000090000004a00000000"));
    const auto expected = hex_bytes(
        "10f1e7e4d13b5915500fdd1fa32071c4c7d1f4c733c068030422aa9ac3d46c4e"
        "d2826446079faa0914c2d705d98b02a2b5129cd1de164eb9cbd083e8a2503c4e");
    REQUIRE(expected.size() == 64);
    CHECK(std::equal(ks.begin(), ks.end(), expected.begin()));
}

TEST_CASE("distinct counters give distinct blocks") {
    const auto nonce = nonce_of("000000090000004a00000000");
    const auto b1 = chacha::block(rfc_key(), 1, nonce);
    const auto b2 = chacha::block(rfc_key(), 2, nonce);
    CHECK(b1 != b2);
}

// IETF test vector: full message encryption, counter 1.
TEST_CASE("xor_stream matches the published encryption vector") {
    const std::string text =
        "Ladies and Gentlemen of the class of '99: If I could offer you "
        "only one tip for the future, sunscreen would be it.";
    const std::vector<std::uint8_t> plaintext(text.begin(), text.end());
    REQUIRE(plaintext.size() == 114);

    const auto ct = chacha::xor_stream(rfc_key(), nonce_of("000000000000004a00000000"), 1, plaintext);
    const auto expected = hex_bytes(
        "6e2e359a2568f98041ba0728dd0d6981e97e7aec1d4360c20a27afccfd9fae0b"
        "f91b65c5524733ab8f593dabcd62b3571639d624e65152ab8f530c359f0861d8"
        "07ca0dbf500d6a6156a38e088a22b65e52bc514d16ccf806818ce91ab7793736"
        "5af90bbf74a35be6b40b8eedf2785e42874d");
    CHECK(ct == expected);
}

TEST_CASE("xor_stream is an involution") {
    SplitMix64 rng(42);
    const chacha::Key key = [&] {
        chacha::Key k;
        for (auto& b : k) b = rng.next_byte();
        return k;
    }();
    const chacha::Nonce nonce = [&] {
        chacha::Nonce n;
        for (auto& b : n) b = rng.next_byte();
        return n;
    }();
    for (std::size_t len : {0u, 1u, 63u, 64u, 65u, 1000u}) {
        std::vector<std::uint8_t> data(len);
        for (auto& b : data) b = rng.next_byte();
        const auto once = chacha::xor_stream(key, nonce, 1, data);
        const auto twice = chacha::xor_stream(key, nonce, 1, once);
        CHECK(twice == data);
        CHECK(once.size() == data.size());
    }
}

TEST_CASE("keystream position independence across block boundaries") {
    SplitMix64 rng(7);
    chacha::Key key;
    for (auto& b : key) b = rng.next_byte();
    chacha::Nonce nonce;
    for (auto& b : nonce) b = rng.next_byte();

    std::vector<std::uint8_t> data(128 + 37);
    for (auto& b : data) b = rng.next_byte();

    const auto whole = chacha::xor_stream(key, nonce, 1, data);
    const std::vector<std::uint8_t> head(data.begin(), data.begin() + 128);
    const std::vector<std::uint8_t> tail(data.begin() + 128, data.end());
    auto part1 = chacha::xor_stream(key, nonce, 1, head);
    const auto part2 = chacha::xor_stream(key, nonce, 3, tail);  // 128 bytes = 2 blocks
    part1.insert(part1.end(), part2.begin(), part2.end());
    CHECK(part1 == whole);
}

TEST_CASE("keystream byte frequencies stay near uniform") {
    chacha::Key key{};
    key[0] = 1;
    const std::vector<std::uint8_t> zeros(64 * 1024, 0);
    const auto ks = chacha::xor_stream(key, chacha::Nonce{}, 1, zeros);

    std::array<int, 256> counts{};
    for (std::uint8_t b : ks) ++counts[b];
    // n*p = 256 per value, sigma = sqrt(n*p*(1-p)) ~= 16; allow 5 sigma.
    for (int c : counts) {
        CHECK(c > 256 - 80);
        CHECK(c < 256 + 80);
    }
}

TEST_CASE("stream exceeding the counter space is rejected") {
    const std::vector<std::uint8_t> data(65, 0);
    CHECK_THROWS_AS(chacha::xor_stream(chacha::Key{}, chacha::Nonce{}, 0xFFFFFFFFu, data),
                    InputError);
    // 64 bytes exactly fits in the last counter value.
    CHECK_NOTHROW(chacha::xor_stream(chacha::Key{}, chacha::Nonce{}, 0xFFFFFFFFu,
                                     std::vector<std::uint8_t>(64, 0)));
}

TEST_CASE("empty input gives empty output") {
    CHECK(chacha::xor_stream(chacha::Key{}, chacha::Nonce{}, 1, {}).empty());
}
