#include <doctest.h>

#include <sstream>

#include "letq/diagnosis.hpp"
#include "letq/serialize.hpp"
#include "letq/structure.hpp"
#include "letq/topology.hpp"

using namespace letq;

TEST_CASE("edge list round trip") {
  Topology topo = Topology::build_letq({1, 2});
  std::string text = edge_list_text(topo);
  std::istringstream in(text);
  Topology back = Topology::from_edges(topo.params(), parse_edge_list(in, topo.params()));
  CHECK(back.vertex_count() == topo.vertex_count());
  CHECK(back.edge_count() == topo.edge_count());
  CHECK(edge_list_text(back) == text);

  SUBCASE("malformed line is rejected") {
    std::string broken = text;
    broken.replace(broken.find('\n') + 1, 0, "0000 9999\n");
    std::istringstream bad(broken);
    CHECK_THROWS_AS(parse_edge_list(bad, topo.params()), std::invalid_argument);
  }
}

TEST_CASE("dot output names clusters") {
  Topology topo = Topology::build_letq({1, 1});
  std::string dot = dot_text(topo, true);
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find("cluster_l") != std::string::npos);
  CHECK(dot.find("cluster_r") != std::string::npos);
  CHECK(dot.find("\"000\"") != std::string::npos);
}

TEST_CASE("adjacency json shape") {
  Topology topo = Topology::build_letq({1, 2});
  Json j = adjacency_json(topo);
  CHECK(j["family"] == "letq");
  CHECK(j["s"] == 1);
  CHECK(j["t"] == 2);
  CHECK(j["vertices"].size() == 16);
  Topology cube = Topology::build_ltq(3);
  Json k = adjacency_json(cube);
  CHECK(k["family"] == "ltq");
  CHECK(k["n"] == 3);
}

TEST_CASE("report json stability") {
  Topology topo = Topology::build_letq({1, 1});
  CutReport rep = kappa_g_bruteforce(topo, 1);
  Json j = cut_report_json(topo, rep);
  CHECK(j["g"] == 1);
  CHECK(j["formula"] == 2);
  CHECK(j["certified"] == 2);
  CHECK(j["partial"] == false);
  std::string a = j.dump(2);
  std::string b = cut_report_json(topo, kappa_g_bruteforce(topo, 1)).dump(2);
  CHECK(a == b);
}

TEST_CASE("verify report json verdicts") {
  Topology topo = Topology::build_letq({1, 1});
  VerifyOptions opt;
  opt.mode = VerifyMode::Exhaustive;
  VerifyReport pass = verify_tg(topo, 0, Model::PMC, opt);
  Json jp = verify_report_json(topo, pass);
  CHECK(jp["verdict"] == "pass");
  CHECK(jp["model"] == "pmc");
  CHECK(jp["claimed_tg"] == 2);
  CHECK(jp.contains("witness_pair"));

  opt.claimed_override = 3;
  VerifyReport fail = verify_tg(topo, 0, Model::PMC, opt);
  Json jf = verify_report_json(topo, fail);
  CHECK(jf["verdict"] == "fail");
  CHECK(jf.contains("counterexample"));
}

TEST_CASE("model and policy parsing") {
  CHECK(parse_model("pmc") == Model::PMC);
  CHECK(parse_model("mm") == Model::MMStar);
  CHECK(parse_model("mm*") == Model::MMStar);
  CHECK(parse_model("mmstar") == Model::MMStar);
  CHECK_THROWS_AS(parse_model("bogus"), std::invalid_argument);

  CHECK(parse_policy("zeros", 0).kind == AdversaryPolicy::Kind::AllZeros);
  CHECK(parse_policy("ones", 0).kind == AdversaryPolicy::Kind::AllOnes);
  AdversaryPolicy p = parse_policy("random", 42);
  CHECK(p.kind == AdversaryPolicy::Kind::SeededRandom);
  CHECK(p.seed == 42);
  CHECK(policy_name(p) == "seeded-random(42)");
  CHECK_THROWS_AS(parse_policy("bogus", 0), std::invalid_argument);
}

TEST_CASE("syndrome transcript and digest") {
  Topology topo = Topology::build_letq({1, 1});
  TestAssignment asg = TestAssignment::build(topo, Model::PMC);
  FaultSet f(topo, {0});
  Syndrome syn = generate_syndrome(topo, asg, f, AdversaryPolicy::zeros());
  Json j = syndrome_json(topo, asg, syn);
  REQUIRE(j.size() == asg.size());
  CHECK(j[0].contains("test"));
  CHECK(j[0].contains("outcome"));
  std::string d1 = syndrome_digest(syn);
  std::string d2 = syndrome_digest(syn);
  CHECK(d1 == d2);
  CHECK(d1.size() == 16);
  Syndrome other = syn;
  other[0] ^= 1;
  CHECK(syndrome_digest(other) != d1);
}

TEST_CASE("label line reader skips blanks and comments") {
  std::istringstream in("000\n# note\n\n110\n");
  auto lines = read_label_lines(in);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "000");
  CHECK(lines[1] == "110");
}
