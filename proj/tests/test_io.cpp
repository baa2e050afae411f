#include <random>
#include <string>

#include <gtest/gtest.h>

#include "sdc/sdc.hpp"

using namespace sdc;

namespace {

Cyclotomic random_cyclotomic(std::mt19937& rng) {
    static const std::int64_t conductors[] = {1, 3, 4, 5, 8, 9, 12, 24};
    const std::int64_t L = conductors[rng() % 8];
    std::vector<Rational> c(static_cast<std::size_t>(L));
    for (auto& x : c) {
        if (rng() % 2) continue;
        x = make_rational(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 7) + 1);
    }
    return Cyclotomic::from_powers(L, c);
}

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(CyclotomicText, RoundTrip) {
    std::mt19937 rng(7);
    for (int k = 0; k < 500; ++k) {
        const Cyclotomic c = random_cyclotomic(rng);
        EXPECT_EQ(parse_cyclotomic(c.to_string()), c) << c;
        EXPECT_EQ(cyclotomic_from(detail::DocNode(cyclotomic_json(c), "")), c) << c;
    }
}

TEST(CyclotomicText, Forms) {
    EXPECT_EQ(parse_cyclotomic("-1/2"), Cyclotomic(make_rational(-1, 2)));
    EXPECT_EQ(parse_cyclotomic("2*z8^3"), root_of_unity(8, 3) * Cyclotomic(2));
    EXPECT_EQ(parse_cyclotomic("z8^-1"), root_of_unity(8, 7));
    EXPECT_EQ(parse_cyclotomic("i * i"), Cyclotomic(-1));
    const Cyclotomic r = parse_cyclotomic("1/sqrt(2)");
    EXPECT_EQ(r * r, Cyclotomic(make_rational(1, 2)));
}

TEST(CyclotomicText, Errors) {
    EXPECT_THROW(parse_cyclotomic(""), ParseError);
    EXPECT_THROW(parse_cyclotomic("z8 +"), ParseError);
    EXPECT_THROW(parse_cyclotomic("1/0"), ParseError);
    EXPECT_THROW(parse_cyclotomic("q"), ParseError);
    EXPECT_THROW(parse_cyclotomic("(1"), ParseError);
}

TEST(FormRingDocument, ClosedFormsMatchPresets) {
    const FormRing z4 = read_form_ring(read_json_file(std::string(SDC_DATA_DIR) + "/z4_type2.json"));
    const FormRing f9 = read_form_ring(read_json_file(std::string(SDC_DATA_DIR) + "/f9_hermitian.json"));
    auto mats = [](const FormRing& rho) {
        std::vector<CycMatrix> out;
        for (const auto& g : clifford_weil_generators(rho)) out.push_back(g.matrix);
        return out;
    };
    EXPECT_EQ(mats(z4), mats(preset("4_II_Z")));
    EXPECT_EQ(mats(f9), mats(preset("9_H")));
    EXPECT_EQ(z4.level, 8);
    EXPECT_EQ(f9.level, 3);
}

TEST(FormRingDocument, ExportRoundTrip) {
    for (const auto& name : preset_names()) {
        const FormRing rho = preset(name);
        const Json doc = parse_json(dump_document(form_ring_json(rho)));
        const FormRing back = read_form_ring(doc);
        EXPECT_EQ(back.label, rho.label);
        EXPECT_EQ(back.beta, rho.beta) << name;
        EXPECT_EQ(back.level, rho.level) << name;
        ASSERT_EQ(back.phi.size(), rho.phi.size());
        for (std::size_t k = 0; k < rho.phi.size(); ++k) EXPECT_EQ(back.phi[k].table, rho.phi[k].table);
        const auto a = clifford_weil_generators(rho), b = clifford_weil_generators(back);
        ASSERT_EQ(a.size(), b.size()) << name;
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].label, b[i].label);
            EXPECT_EQ(a[i].matrix, b[i].matrix) << name << " " << a[i].label;
        }
        // exporting the rebuilt Type gives the same bytes
        EXPECT_EQ(dump_document(form_ring_json(back)), dump_document(form_ring_json(rho)));
    }
}

TEST(FormRingDocument, PositionedDiagnostics) {
    auto err = [](const std::string& text) { return message_of([&] { (void)read_form_ring(parse_json(text)); }); };
    EXPECT_EQ(err(R"({"ring": {"modulus": 2}})"), "/: missing key 'beta'");
    EXPECT_EQ(err(R"({"ring": {"modulus": 2}, "beta": {"table": [[0, 0], [0, "1/2", 0]]}})"), "/beta/table/1: expected 2 entries");
    EXPECT_EQ(err(R"({"ring": {"modulus": 2}, "beta": {"tag": "trace"}})"), "/beta/tag: 'trace' needs a ring given by a field spec");
    EXPECT_EQ(err(R"({"ring": {"modulus": 2}, "beta": {"tag": "product"}, "idempotents": [{"iota": 1, "left": 1, "right": "w"}]})"),
              "/idempotents/0/right: unknown ring element 'w'");
    EXPECT_EQ(err(R"({"ring": {"modulus": 2}, "beta": {"tag": "product"}, "level": 3})"), "/beta/tag: value 1/2 is not a multiple of 1/3");
    EXPECT_EQ(err(R"({"ring": {"field": {"p": 4}}, "beta": {"tag": "product"}})"), "/ring/field/p: p must be prime");
    EXPECT_EQ(err(R"({"kind": "code"})"), "/kind: expected a 'form_ring' document");
    // a degenerate form is rejected by validation, reported at the document root
    const std::string degenerate = err(R"({"ring": {"modulus": 2}, "beta": {"table": [[0, 0], [0, 0]]}})");
    EXPECT_EQ(degenerate.rfind("/: form ring fails validation", 0), 0u) << degenerate;
    // syntax errors carry line and column
    const std::string syntax = message_of([] { (void)parse_json("{\"ring\": }", "doc.json"); });
    EXPECT_NE(syntax.find("doc.json"), std::string::npos);
    EXPECT_NE(syntax.find("line 1, column 10"), std::string::npos) << syntax;
}

TEST(CodeDocument, LabelsAndInlineTypes) {
    const Code c = read_code(parse_json(R"({"form_ring": "9_H", "length": 2, "generators": [["1", "a"]]})"));
    EXPECT_EQ(c.size(), 9u);
    EXPECT_TRUE(has_type(c, preset("9_H")));
    const Json inline_doc = {{"form_ring", read_json_file(std::string(SDC_DATA_DIR) + "/z4_type2.json")},
                             {"length", 2},
                             {"generators", {{1, 1}}}};
    EXPECT_EQ(read_code(inline_doc).size(), 4u);
    auto err = [](const std::string& text) { return message_of([&] { (void)read_code(parse_json(text)); }); };
    EXPECT_EQ(err(R"({"form_ring": "2_I", "length": 3, "generators": [[1, 1]]})"), "/generators/0: row has 2 entries, length is 3");
    EXPECT_EQ(err(R"({"form_ring": "2_X", "length": 1, "generators": []})"), "/form_ring: unknown preset '2_X'");
    EXPECT_EQ(err(R"({"form_ring": {"ring": {"modulus": 2}}, "length": 1, "generators": []})"), "/form_ring: missing key 'beta'");
    // round trip through the writer
    const Code h = read_code(read_json_file(std::string(SDC_DATA_DIR) + "/h8.json"));
    EXPECT_EQ(read_code(code_json(h)).packed(), h.packed());
}

TEST(PolynomialDocument, RoundTrip) {
    const std::vector<std::string> xy{"x", "y"};
    WeightPolynomial p = parse_polynomial("x^2 + 3y^2", xy);
    p.add_term({1, 1}, root_of_unity(8, 3));
    const Json doc = parse_json(dump_document(polynomial_json(p)));
    EXPECT_EQ(read_polynomial(doc), p);
    EXPECT_EQ(read_polynomial(Json("x^8 + 14x^4y^4 + y^8")).to_string(), "x^8 + 14x^4y^4 + y^8");
}

TEST(GroupDocument, GeneratorsAndTrivialGroup) {
    const auto gens = read_group_generators(read_json_file(std::string(SDC_DATA_DIR) + "/clifford_2d.json"));
    ASSERT_EQ(gens.size(), 2u);
    EXPECT_EQ(group_closure(gens).order(), 192u);
    const auto trivial = read_group_generators(read_json_file(std::string(SDC_DATA_DIR) + "/trivial_group.json"));
    EXPECT_EQ(group_closure(trivial).order(), 1u);
    const MatrixGroup G = clifford_weil_group(preset("2_I"));
    const auto back = read_group_generators(group_json(G, true, false));
    EXPECT_EQ(group_closure(back).order(), 16u);
    EXPECT_THROW(read_group_generators(parse_json(R"({"generators": [[[1, 0], [0]]]})")), ParseError);
}

TEST(Documents, DumpIsStable) {
    const Json j = form_ring_json(preset("Z6_demo"));
    const std::string text = dump_document(j);
    EXPECT_EQ(dump_document(parse_json(text)), text);
    EXPECT_EQ(text.back(), '\n');
}
