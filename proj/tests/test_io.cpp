// Copyright 2026 The NHSDP Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "nhsdp/io.hpp"

namespace nhsdp {
namespace {

Pda example2() { return pda_from_nhsdp(Nhsdp::make(15, fixtures::kExample1)); }

TEST(PackingJson, RoundTrip) {
  const Nhsdp p = construct_nhsdp(125, std::vector<std::int64_t>{2, 2, 2});
  const auto j = io::to_json(p);
  EXPECT_EQ(j.at("v"), 125);
  EXPECT_EQ(j.at("g"), 8);
  EXPECT_EQ(io::nhsdp_from_json(j), p);
  EXPECT_EQ(io::nhsdp_from_json(io::parse_json(io::dump(j))), p);
}

TEST(PackingJson, SignedInputAndErrors) {
  const auto p = io::nhsdp_from_json(io::parse_json(R"({"v": 15, "blocks": [[14,1,13,2],[11,4,10,5]]})"));
  EXPECT_EQ(p.label(), "(15,4,2)");
  EXPECT_EQ(p.blocks().front(), (Block{1, 2, 13, 14}));
  EXPECT_THROW(io::nhsdp_from_json(io::parse_json(R"({"v": 15, "blocks": [[0,1,2]]})")), NhsdpError);
  EXPECT_THROW(io::nhsdp_from_json(io::parse_json(R"({"v": 15, "g": 3, "blocks": [[1,2]]})")), io::FormatError);
  EXPECT_THROW(io::nhsdp_from_json(io::parse_json(R"({"blocks": [[1,2]]})")), io::FormatError);
  EXPECT_THROW(io::parse_json("{not json"), io::FormatError);
  const auto raw = io::raw_nhsdp_from_json(io::parse_json(R"({"v": 15, "blocks": [[0,1,2]]})"));
  EXPECT_EQ(raw.first, 15);
}

TEST(PdaText, BitExactRoundTrip) {
  const Pda p = example2();
  const std::string text = io::to_text(p);
  EXPECT_EQ(text.substr(0, text.find('\n')), "PDA 15 15 7 30");
  const Pda back = io::pda_from_text(text);
  EXPECT_EQ(back, p);
  EXPECT_EQ(io::to_text(back), text);
  EXPECT_EQ(io::pda_from_string(text), p);
}

TEST(PdaText, CommentsAndErrors) {
  const Pda p = io::pda_from_text("# small\r\nPDA 2 2 1 1\r\n* 1\n\n1 *  # trailing\n");
  EXPECT_EQ(p.label(), "(2,2,1,1)");
  EXPECT_TRUE(verify_pda(p).valid());
  EXPECT_THROW(io::pda_from_text("PDA 2 2 1 1\n* 1\n"), io::FormatError);
  EXPECT_THROW(io::pda_from_text("PDA 2 2 1 1\n* 1\n1\n"), io::FormatError);
  EXPECT_THROW(io::pda_from_text("PDA 1 2 1 1\n* x\n"), io::FormatError);
  EXPECT_THROW(io::pda_from_text("PDA 1 2 1 1\n* 0\n"), io::FormatError);
  EXPECT_THROW(io::pda_from_text("1 2 3\n"), io::FormatError);
}

TEST(PdaJson, RoundTrip) {
  const Pda p = example2();
  const auto j = io::to_json(p);
  EXPECT_EQ(j.at("grid").at(0).at(0), "*");
  EXPECT_EQ(io::pda_from_json(j), p);
  const std::string s = io::dump(j);
  EXPECT_EQ(io::pda_from_string(s), p);
  EXPECT_EQ(io::dump(io::to_json(io::pda_from_string(s))), s);
  EXPECT_THROW(io::pda_from_json(io::parse_json(R"({"F": 3, "grid": [["*", 1]]})")), io::FormatError);
  EXPECT_THROW(io::pda_from_json(io::parse_json(R"({"grid": [["*", 1], [1]]})")), io::FormatError);
  EXPECT_THROW(io::pda_from_json(io::parse_json(R"({"grid": [["?", 1]]})")), io::FormatError);
}

TEST(DerivedJson, NtapPhfCdp) {
  const auto s = ntap_construct(3);
  const auto back = io::ntap_from_json(io::to_json(s));
  EXPECT_EQ(back.v, s.v);
  EXPECT_EQ(back.elements, s.elements);

  const auto phf = phf_from_ntap(s);
  const auto p2 = io::phf_from_json(io::parse_json(io::dump(io::to_json(phf))));
  EXPECT_EQ(p2.grid, phf.grid);
  EXPECT_EQ(p2.m, phf.m);
  EXPECT_EQ(p2.q, phf.q);

  const auto c = io::to_json(Cdp::make(7, {0, 1, 3}));
  EXPECT_EQ(c.at("difference_set"), true);
}

TEST(Hex, RoundTrip) {
  const Bytes b{0x00, 0x01, 0xab, 0xff, 0x10};
  EXPECT_EQ(io::to_hex(b), "0001abff10");
  EXPECT_EQ(io::from_hex("0001ABff10"), b);
  EXPECT_THROW(io::from_hex("abc"), io::FormatError);
  EXPECT_THROW(io::from_hex("zz"), io::FormatError);
}

TEST(Transcript, RoundTrip) {
  std::vector<Cell> cells;
  for (const auto& r : fixtures::kSmallPda) cells.insert(cells.end(), r.begin(), r.end());
  const Pda p = Pda::from_grid(4, 4, cells);
  const FileLibrary lib(4, 4, 8, 42);
  const std::vector<std::size_t> d{0, 1, 2, 3};
  const auto t = deliver(p, lib, d);
  const auto j = io::to_json(t);
  EXPECT_EQ(j.at("demand"), io::json::parse("[1,2,3,4]"));
  EXPECT_EQ(j.at("load"), "1");
  const auto back = io::transcript_from_json(io::parse_json(io::dump(j)));
  EXPECT_EQ(back.demand, t.demand);
  EXPECT_EQ(back.bytes_on_wire, t.bytes_on_wire);
  ASSERT_EQ(back.transmissions.size(), t.transmissions.size());
  for (std::size_t i = 0; i < t.transmissions.size(); ++i) {
    EXPECT_EQ(back.transmissions[i].payload, t.transmissions[i].payload);
    EXPECT_EQ(back.transmissions[i].contributors, t.transmissions[i].contributors);
  }
  // the reloaded transcript still decodes
  const auto cache = place(p, lib);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_TRUE(std::ranges::equal(decode(p, cache, back, k), lib.file(d[k])));
  EXPECT_EQ(io::dump(io::to_json(back)), io::dump(j));
}

TEST(SchemeJson, BigIntsAsStrings) {
  const auto pt = evaluate_scheme("CKSM1", {{"q", 3}, {"k", 6}, {"m", 5}, {"t", 1}});
  const auto j = io::to_json(pt);
  EXPECT_TRUE(j.at("F").is_string());
  EXPECT_EQ(j.at("F").get<std::string>(), pt.F.str());
  EXPECT_EQ(j.at("params"), "k=6;m=5;q=3;t=1");
  EXPECT_EQ(io::to_json(std::vector<SchemePoint>{pt, pt}).size(), 2U);
}

TEST(Files, WriteAndRead) {
  const auto path = std::filesystem::temp_directory_path() / "nhsdp_io_test.txt";
  io::write_file(path.string(), "hello\n");
  EXPECT_EQ(io::read_file(path.string()), "hello\n");
  std::filesystem::remove(path);
  EXPECT_THROW(io::read_file("/nonexistent/dir/file"), std::exception);
}

}  // namespace
}  // namespace nhsdp
