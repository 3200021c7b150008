#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "oracles.hpp"
#include "segc/manifest.hpp"
#include "segc/netpbm.hpp"
#include "segc/synth.hpp"

using namespace segc;

namespace {

std::vector<unsigned char> bytes_of(const std::string& s) {
    return std::vector<unsigned char>(s.begin(), s.end());
}

GrayImage random_quantized_gray(int w, int h, Rng& rng, unsigned maxval = 255) {
    GrayImage img(w, h);
    for (double& v : img.data)
        v = static_cast<double>(rng.next_below(maxval + 1)) / maxval;
    return img;
}

BinaryMask random_mask(int w, int h, Rng& rng) {
    BinaryMask m(w, h);
    for (auto& v : m.data) v = rng.next_below(2) ? 1 : 0;
    return m;
}

}  // namespace

TEST_CASE("P5 payload maps samples to [0,1] by value/maxval") {
    std::vector<unsigned char> file = bytes_of("P5\n2 2\n255\n");
    const unsigned char payload[] = {0, 255, 128, 64};
    file.insert(file.end(), payload, payload + 4);
    GrayImage img = decode_gray(file);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.data[0] == 0.0);
    CHECK(img.data[1] == 1.0);
    CHECK(img.data[2] == (128.0 / 255.0));
    CHECK(img.data[3] == (64.0 / 255.0));
}

TEST_CASE("P2 parses to the same image as its P5 equivalent") {
    std::vector<unsigned char> p5 = bytes_of("P5\n2 2\n255\n");
    const unsigned char payload[] = {0, 255, 128, 64};
    p5.insert(p5.end(), payload, payload + 4);
    GrayImage a = decode_gray(p5);
    GrayImage b = decode_gray(bytes_of("P2\n2 2\n255\n0 255\n128 64\n"));
    CHECK(a.data == b.data);
}

TEST_CASE("comments and arbitrary whitespace in headers are skipped") {
    GrayImage img = decode_gray(bytes_of("P2 # gray\n# full line comment\n 2\t1 \n255\n7 9\n"));
    CHECK(img.width == 2);
    CHECK(img.data[0] == doctest::Approx(7.0 / 255.0).epsilon(1e-14));
}

TEST_CASE("write/load round trips are bit exact on every supported format") {
    Rng rng(0x5eed);
    for (int rep = 0; rep < 8; ++rep) {
        GrayImage img = random_quantized_gray(16, 16, rng);
        for (bool binary : {true, false}) {
            auto f1 = encode_gray(img, binary);
            auto f2 = encode_gray(decode_gray(f1), binary);
            CHECK(f1 == f2);
        }
    }
    SUBCASE("16-bit gray") {
        GrayImage img = random_quantized_gray(9, 5, rng, 65535);
        auto f1 = encode_gray(img, true, 65535);
        CHECK(f1 == encode_gray(decode_gray(f1), true, 65535));
    }
    SUBCASE("masks") {
        for (int rep = 0; rep < 8; ++rep) {
            BinaryMask m = random_mask(32, 32, rng);
            for (bool binary : {true, false}) {
                auto f1 = encode_mask(m, binary);
                auto f2 = encode_mask(decode_mask(f1), binary);
                CHECK(f1 == f2);
            }
        }
    }
    SUBCASE("rgb") {
        RgbImage rgb;
        rgb.width = 7;
        rgb.height = 3;
        for (int i = 0; i < 21; ++i) {
            rgb.r.push_back(static_cast<double>(rng.next_below(256)) / 255.0);
            rgb.g.push_back(static_cast<double>(rng.next_below(256)) / 255.0);
            rgb.b.push_back(static_cast<double>(rng.next_below(256)) / 255.0);
        }
        for (bool binary : {true, false}) {
            auto f1 = encode_rgb(rgb, binary);
            CHECK(f1 == encode_rgb(decode_rgb(f1), binary));
        }
        // loading a PPM as gray converts through the luma weights
        GrayImage g = decode_gray(encode_rgb(rgb));
        GrayImage expect = to_gray(decode_rgb(encode_rgb(rgb)));
        CHECK(g.data == expect.data);
    }
    SUBCASE("wide P1 rows wrap without corruption") {
        BinaryMask m = random_mask(100, 3, rng);
        auto f1 = encode_mask(m, false);
        CHECK(decode_mask(f1).data == m.data);
        CHECK(f1 == encode_mask(decode_mask(f1), false));
    }
}

TEST_CASE("load_mask semantics") {
    BinaryMask m = decode_mask(bytes_of("P1\n2 1\n1 0\n"));
    CHECK(m.at(0, 0));
    CHECK_FALSE(m.at(1, 0));

    SUBCASE("PGM masks binarize at 0.5") {
        std::vector<unsigned char> file = bytes_of("P5\n4 1\n255\n");
        const unsigned char payload[] = {0, 255, 127, 128};
        file.insert(file.end(), payload, payload + 4);
        BinaryMask pm = decode_mask(file);
        CHECK_FALSE(pm.at(0, 0));
        CHECK(pm.at(1, 0));
        CHECK_FALSE(pm.at(2, 0));  // 127/255 < 0.5
        CHECK(pm.at(3, 0));        // 128/255 >= 0.5
    }
    SUBCASE("PPM rejected as mask") {
        CHECK_THROWS_AS(decode_mask(bytes_of("P6\n1 1\n255\nabc")), PnmError);
    }
}

TEST_CASE("parse errors carry kind and byte offset") {
    SUBCASE("bad magic") {
        try {
            decode_gray(bytes_of("P7\n1 1\n255\nx"));
            FAIL("expected PnmError");
        } catch (const PnmError& e) {
            CHECK(e.kind() == PnmError::Kind::BadMagic);
            CHECK(e.offset() == 0);
        }
    }
    SUBCASE("malformed header") {
        try {
            decode_gray(bytes_of("P5\nxx 2\n255\n"));
            FAIL("expected PnmError");
        } catch (const PnmError& e) {
            CHECK(e.kind() == PnmError::Kind::BadHeader);
            CHECK(e.offset() == 3);
        }
    }
    SUBCASE("truncated binary payload") {
        std::vector<unsigned char> file = bytes_of("P5\n2 2\n255\n");
        file.push_back(42);  // 1 of 4 payload bytes
        try {
            decode_gray(file);
            FAIL("expected PnmError");
        } catch (const PnmError& e) {
            CHECK(e.kind() == PnmError::Kind::Truncated);
            CHECK(e.offset() == file.size());
        }
    }
    SUBCASE("sample above maxval") {
        CHECK_THROWS_AS(decode_gray(bytes_of("P2\n1 1\n15\n16\n")), PnmError);
    }
    SUBCASE("zero maxval") {
        CHECK_THROWS_AS(decode_gray(bytes_of("P2\n1 1\n0\n0\n")), PnmError);
    }
}

TEST_CASE("to_gray uses BT.601 luma") {
    RgbImage rgb;
    rgb.width = 2;
    rgb.height = 1;
    rgb.r = {1.0, 1.0};
    rgb.g = {1.0, 0.0};
    rgb.b = {1.0, 0.0};
    GrayImage g = to_gray(rgb);
    CHECK(g.data[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.data[1] == (0.299));

    SUBCASE("random pixels agree with a scalar recomputation") {
        Rng rng(11);
        RgbImage rnd;
        rnd.width = 8;
        rnd.height = 8;
        for (int i = 0; i < 64; ++i) {
            rnd.r.push_back(rng.next_double());
            rnd.g.push_back(rng.next_double());
            rnd.b.push_back(rng.next_double());
        }
        GrayImage out = to_gray(rnd);
        for (int i = 0; i < 64; ++i) {
            const double expect = 0.299 * rnd.r[i] + 0.587 * rnd.g[i] + 0.114 * rnd.b[i];
            CHECK(out.data[i] == doctest::Approx(expect).epsilon(1e-15));
            const double lo = std::min({rnd.r[i], rnd.g[i], rnd.b[i]});
            const double hi = std::max({rnd.r[i], rnd.g[i], rnd.b[i]});
            CHECK(out.data[i] >= lo - 1e-15);
            CHECK(out.data[i] <= hi + 1e-15);
        }
    }
    SUBCASE("channel dimension mismatch throws") {
        RgbImage bad;
        bad.width = 2;
        bad.height = 1;
        bad.r = {0.0, 0.0};
        bad.g = {0.0};
        bad.b = {0.0, 0.0};
        CHECK_THROWS_AS(to_gray(bad), ValueError);
    }
}

TEST_CASE("synthetic generators") {
    SUBCASE("disk r=0 is all background") {
        CHECK(synth_disk(32, 32, 0.0).foreground_count() == 0);
    }
    SUBCASE("rectangle covering the frame is all foreground") {
        BinaryMask m = synth_rectangle(16, 8, 0, 0, 16, 8);
        CHECK(m.foreground_count() == m.size());
    }
    SUBCASE("vessels are deterministic in the seed") {
        BinaryMask a = synth_vessels(64, 64, 5, 7);
        BinaryMask b = synth_vessels(64, 64, 5, 7);
        CHECK(a.data == b.data);
        BinaryMask c = synth_vessels(64, 64, 5, 8);
        CHECK(a.data != c.data);
    }
    SUBCASE("noise is deterministic in the seed") {
        CHECK(synth_noise(16, 16, 3).data == synth_noise(16, 16, 3).data);
    }
    SUBCASE("shapes exceeding the frame throw") {
        CHECK_THROWS_AS(synth_disk(32, 32, 20.0), ValueError);
        CHECK_THROWS_AS(synth_rectangle(16, 16, 10, 0, 8, 4), ValueError);
    }
}

TEST_CASE("manifest loading") {
    auto dir = oracle::temp_dir("manifest");
    write_gray(dir / "img.pgm", GrayImage(4, 4, 0.5));
    write_mask(dir / "msk.pbm", synth_rectangle(4, 4, 1, 1, 2, 2));
    {
        std::ofstream mf(dir / "ok.json");
        mf << R"({"name":"toy","items":[{"image":"img.pgm","mask":"msk.pbm"}]})";
    }
    DatasetManifest m = load_manifest(dir / "ok.json");
    CHECK(m.name == "toy");
    REQUIRE(m.items.size() == 1);
    CHECK(m.items[0].image == dir / "img.pgm");  // resolved relative to the manifest

    SUBCASE("empty items rejected") {
        std::ofstream mf(dir / "empty.json");
        mf << R"({"name":"x","items":[]})";
        mf.close();
        CHECK_THROWS_AS(load_manifest(dir / "empty.json"), ValueError);
    }
    SUBCASE("identical image and mask paths rejected") {
        std::ofstream mf(dir / "dup.json");
        mf << R"({"name":"x","items":[{"image":"a.pgm","mask":"a.pgm"}]})";
        mf.close();
        CHECK_THROWS_AS(load_manifest(dir / "dup.json"), ValueError);
    }
    SUBCASE("missing manifest file is an I/O error") {
        CHECK_THROWS_AS(load_manifest(dir / "absent.json"), IoError);
    }
    std::filesystem::remove_all(dir);
}
