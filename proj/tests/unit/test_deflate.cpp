#include <zlib.h>

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "relicpress/deflate.hpp"
#include "relicpress/error.hpp"

using namespace relicpress;
using namespace relicpress::codec;

namespace {

std::vector<std::uint8_t> zlib_inflate_raw(const std::vector<std::uint8_t>& in, std::size_t expect) {
    z_stream zs{};
    REQUIRE(inflateInit2(&zs, -15) == Z_OK);
    std::vector<std::uint8_t> out(expect + 1);
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    CHECK(rc == Z_STREAM_END);
    CHECK(zs.avail_in == 0);
    out.resize(zs.total_out);
    inflateEnd(&zs);
    return out;
}

std::vector<std::uint8_t> zlib_deflate_raw(const std::vector<std::uint8_t>& in, int level) {
    z_stream zs{};
    REQUIRE(deflateInit2(&zs, level, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) == Z_OK);
    std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(in.size())));
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    REQUIRE(deflate(&zs, Z_FINISH) == Z_STREAM_END);
    out.resize(zs.total_out);
    deflateEnd(&zs);
    return out;
}

std::vector<std::uint8_t> bytes(std::string_view s) { return {s.begin(), s.end()}; }

std::vector<std::uint8_t> agc_like(std::mt19937& rng, std::size_t n) {
    static const char* words[] = {"TC", "BANKCALL", "CAF", "TS", "CA", "EXTEND", "DCA", "DXCH",
                                  "ZERO", "ONE", "P63LM", "+1", "-2", "Q", "L", "A", "# comment"};
    std::vector<std::uint8_t> out;
    while (out.size() < n) {
        const char* w = words[rng() % std::size(words)];
        out.insert(out.end(), w, w + std::char_traits<char>::length(w));
        out.push_back(rng() % 4 == 0 ? '\n' : ' ');
    }
    out.resize(n);
    return out;
}

std::vector<std::uint8_t> random_bytes(std::mt19937& rng, std::size_t n, unsigned alphabet) {
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng() % alphabet);
    return out;
}

void check_both_directions(const std::vector<std::uint8_t>& input) {
    const auto blob = compress(std::span<const std::uint8_t>(input));
    CHECK(blob.original_size == input.size());
    CHECK(zlib_inflate_raw(blob.data, input.size()) == input);
    CHECK(decompress(blob) == input);
    for (int level : {1, 6, 9}) CHECK(inflate_raw(zlib_deflate_raw(input, level)) == input);
}

}  // namespace

TEST_CASE("empty input is a single fixed block holding end-of-block") {
    const auto blob = compress(std::string_view{});
    CHECK(blob.data == std::vector<std::uint8_t>{0x03, 0x00});
    CHECK(blob.original_size == 0);
    CHECK(decompress(blob).empty());
    CHECK(zlib_inflate_raw(blob.data, 0).empty());
}

TEST_CASE("interoperates with zlib on structured and random inputs") {
    std::mt19937 rng(1969);
    check_both_directions(bytes("a"));
    check_both_directions(bytes("TC BANKCALL\n"));
    for (std::size_t n : {2u, 3u, 100u, 258u, 1000u, 5000u, 40000u, 70000u}) {
        check_both_directions(agc_like(rng, n));
        check_both_directions(random_bytes(rng, n, 256));
        check_both_directions(random_bytes(rng, n, 3));
    }
    check_both_directions(std::vector<std::uint8_t>(100000, 'x'));
}

TEST_CASE("option variants still round-trip") {
    std::mt19937 rng(7);
    const auto input = agc_like(rng, 20000);
    for (DeflateOptions o : {DeflateOptions{1, 3, false}, DeflateOptions{16, 32, true}, DeflateOptions{}}) {
        const auto blob = compress(std::span<const std::uint8_t>(input), o);
        CHECK(zlib_inflate_raw(blob.data, input.size()) == input);
    }
}

TEST_CASE("highly repetitive AGC text collapses") {
    std::string text;
    while (text.size() < 10240) text += "TC BANKCALL\n";
    const auto blob = compress(text);
    CHECK(blob.data.size() < 200);
    CHECK(to_string(decompress(blob)) == text);
}

TEST_CASE("compression is not worse than zlib level 9 by more than a few percent") {
    std::mt19937 rng(11);
    const auto input = agc_like(rng, 30000);
    const auto ours = compress(std::span<const std::uint8_t>(input)).data.size();
    const auto theirs = zlib_deflate_raw(input, 9).size();
    CHECK(static_cast<double>(ours) <= static_cast<double>(theirs) * 1.05);
}

TEST_CASE("malformed streams report the failing offset") {
    SUBCASE("reserved block type") {
        const std::vector<std::uint8_t> bad{0x07};
        CHECK_THROWS_AS(inflate_raw(bad), InflateError);
    }
    SUBCASE("truncated stream") {
        const auto blob = compress(std::string(5000, 'q') + "tail");
        std::vector<std::uint8_t> cut(blob.data.begin(), blob.data.begin() + 3);
        try {
            inflate_raw(cut);
            FAIL("expected InflateError");
        } catch (const InflateError& e) {
            CHECK(e.kind() == ErrorKind::InflateError);
            CHECK(e.offset() <= cut.size());
        }
    }
    SUBCASE("stored length check") {
        const std::vector<std::uint8_t> bad{0x01, 0x05, 0x00, 0x00, 0x00, 'a'};
        CHECK_THROWS_AS(inflate_raw(bad), InflateError);
    }
    SUBCASE("distance before start") {
        // Fixed block: length symbol 257 (len 3), distance code 0 (dist 1) with no prior output.
        std::vector<std::uint8_t> bad{0x03, 0x02, 0x00};
        CHECK_THROWS_AS(inflate_raw(bad), InflateError);
    }
    SUBCASE("size mismatch against the blob header") {
        auto blob = compress(std::string_view("hello"));
        blob.original_size = 6;
        CHECK_THROWS_AS(decompress(blob), InflateError);
    }
}
