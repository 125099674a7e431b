#include <doctest.h>

#include <qent/qent.h>

#include <cmath>
#include <cstring>
#include <string>

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  qent_string_free(s);
  return out;
}

const char* kDiag = R"({"dim":2,"re":[[0.75,0],[0,0.25]]})";
const char* kMixed = R"({"dim":2,"re":[[0.5,0],[0,0.5]]})";
const char* kHadamard =
    R"({"dim":2,"re":[[0.70710678118654752,0.70710678118654752],)"
    R"([0.70710678118654752,-0.70710678118654752]]})";

}  // namespace

TEST_CASE("library identity and status names") {
  CHECK(std::string(qent_version()) == "0.1.0");
  CHECK(std::string(qent_status_name(QENT_OK)) == "ok");
  CHECK(std::string(qent_status_name(QENT_CHECK_FAILED)) == "check-failed");
  CHECK(std::string(qent_status_name(QENT_NOT_MAJORIZED)) == "not-majorized");
  CHECK(std::string(qent_status_name(QENT_INTERNAL)) == "internal");

  const qent_tolerances tol = qent_default_tolerances();
  CHECK(tol.herm == 1e-9);
  CHECK(tol.psd == 1e-9);
  CHECK(tol.unitary == 1e-9);
  CHECK(tol.norm == 1e-10);
}

TEST_CASE("state handles round-trip through JSON") {
  qent_state* s = nullptr;
  REQUIRE(qent_state_parse(kDiag, nullptr, &s) == QENT_OK);
  CHECK(qent_state_dim(s) == 2);
  CHECK(std::string(qent_last_error()).empty());

  char* text = nullptr;
  REQUIRE(qent_state_to_json(s, &text) == QENT_OK);
  const std::string json = take(text);

  qent_state* again = nullptr;
  REQUIRE(qent_state_parse(json.c_str(), nullptr, &again) == QENT_OK);
  double v1 = 0.0, v2 = 0.0;
  CHECK(qent_entropy(s, "vn", "2", &v1) == QENT_OK);
  CHECK(qent_entropy(again, "vn", "2", &v2) == QENT_OK);
  CHECK(v1 == v2);
  qent_state_free(again);
  qent_state_free(s);
}

TEST_CASE("parse failures report a code and a message") {
  qent_state* s = nullptr;
  CHECK(qent_state_parse("{not json", nullptr, &s) == QENT_BAD_INPUT);
  CHECK(s == nullptr);
  CHECK(!std::string(qent_last_error()).empty());

  CHECK(qent_state_parse(R"({"dim":2,"re":[[0.75,0.5],[0.5,0.25]]})", nullptr, &s) ==
        QENT_NOT_PSD);
  CHECK(std::string(qent_last_error()).find("NotPSD") != std::string::npos);

  CHECK(qent_state_parse(R"({"dim":2,"re":[[1,0],[0,1]]})", nullptr, &s) ==
        QENT_TRACE_NOT_ONE);

  qent_basis* b = nullptr;
  CHECK(qent_basis_parse(R"({"dim":2,"re":[[1,1],[0,1]]})", nullptr, &b) ==
        QENT_NOT_UNITARY);

  CHECK(qent_state_parse(nullptr, nullptr, &s) == QENT_BAD_INPUT);
  CHECK(qent_entropy(nullptr, "vn", "2", nullptr) == QENT_BAD_INPUT);
}

TEST_CASE("direct numeric calls") {
  qent_state* s = nullptr;
  REQUIRE(qent_state_parse(kDiag, nullptr, &s) == QENT_OK);

  double v = 0.0;
  CHECK(qent_entropy(s, "vn", "2", &v) == QENT_OK);
  CHECK(std::abs(v - 0.81127812445913283) <= 1e-14);
  CHECK(qent_entropy(s, "renyi:2", "2", &v) == QENT_OK);
  CHECK(std::abs(v - 0.67807190511263771) <= 1e-14);
  CHECK(qent_entropy(s, "renyi:2", "e", &v) == QENT_OK);
  CHECK(std::abs(v - 0.67807190511263771 * std::log(2.0)) <= 1e-14);
  CHECK(qent_entropy(s, "banana", "2", &v) == QENT_BAD_INPUT);

  qent_basis* h = nullptr;
  REQUIRE(qent_basis_parse(kHadamard, nullptr, &h) == QENT_OK);
  CHECK(qent_basis_dim(h) == 2);

  qent_state* flat = nullptr;
  REQUIRE(qent_dephase(s, h, &flat) == QENT_OK);
  CHECK(qent_entropy(flat, "vn", "2", &v) == QENT_OK);
  CHECK(std::abs(v - 1.0) <= 1e-14);

  double probs[2] = {0.0, 0.0};
  CHECK(qent_measurement_distribution(s, h, probs, 2) == QENT_OK);
  CHECK(std::abs(probs[0] - 0.5) <= 1e-14);
  CHECK(qent_measurement_distribution(s, h, probs, 1) == QENT_BAD_INPUT);

  qent_state_free(flat);
  qent_basis_free(h);
  qent_state_free(s);
}

TEST_CASE("entropy op emits a fixed document") {
  const std::string req =
      std::string(R"({"state":)") + kMixed + R"(,"measure":"vn","base":"2"})";
  char* out = nullptr;
  REQUIRE(qent_entropy_op(req.c_str(), &out) == QENT_OK);
  CHECK(take(out) == "{\"value\":1,\"measure\":\"vn\",\"base\":2}\n");

  char* out2 = nullptr;
  REQUIRE(qent_entropy_op(req.c_str(), &out2) == QENT_OK);
  char* out3 = nullptr;
  REQUIRE(qent_entropy_op(req.c_str(), &out3) == QENT_OK);
  CHECK(take(out2) == take(out3));
}

TEST_CASE("verify op returns a clean report for a pure state") {
  const std::string req =
      R"({"state":{"dim":2,"re":[[1,0],[0,0]]},"measure":"vn","samples":50,"seed":1})";
  char* out = nullptr;
  REQUIRE(qent_verify_principles(req.c_str(), &out) == QENT_OK);
  const std::string doc = take(out);
  CHECK(doc.find("\"violations\":[]") != std::string::npos);
  CHECK(doc.find("\"achieved_at_eigenbasis\":true") != std::string::npos);
  CHECK(doc.back() == '\n');
}

TEST_CASE("verify op flags the order-2 correlation excess") {
  const std::string req = std::string(R"({"state":)") + kDiag +
                          R"(,"measure":"renyi:2","samples":400,"seed":2})";
  char* out = nullptr;
  const qent_status st = qent_verify_principles(req.c_str(), &out);
  CHECK(st == QENT_CHECK_FAILED);
  const std::string doc = take(out);
  CHECK(doc.find("\"kind\":\"cross-max\"") != std::string::npos);
}

TEST_CASE("maxent op solves the frozen problem") {
  const std::string req = R"({"problem":{
    "q":[0.35,0.35,0.30],
    "alpha":[[0.5,0.5,0.0],[0.25,0.25,0.5],[0.25,0.25,0.5]]},
    "oracle":true})";
  char* out = nullptr;
  REQUIRE(qent_maxent(req.c_str(), &out) == QENT_OK);
  const std::string doc = take(out);
  CHECK(doc.find("\"converged\":true") != std::string::npos);
  CHECK(doc.find("\"objective\":1.570950594") != std::string::npos);
  CHECK(doc.find("\"objective_gap\":") != std::string::npos);
}

TEST_CASE("transition op maps majorization failures to a status") {
  const std::string req = std::string(R"({"source":)") + kMixed +
                          R"(,"target":)" + kDiag + R"(,"mode":"noisy"})";
  char* out = nullptr;
  CHECK(qent_transition(req.c_str(), &out) == QENT_NOT_MAJORIZED);
  CHECK(out == nullptr);
  CHECK(std::string(qent_last_error()).find("NotMajorized") != std::string::npos);

  const std::string ok_req = std::string(R"({"source":)") + kDiag +
                             R"(,"target":)" + kMixed + R"(,"mode":"noisy"})";
  REQUIRE(qent_transition(ok_req.c_str(), &out) == QENT_OK);
  const std::string doc = take(out);
  CHECK(doc.find("\"mode\":\"noisy\"") != std::string::npos);
  CHECK(doc.find("\"residual_target\":") != std::string::npos);
}

TEST_CASE("compress op emits CSV on request") {
  const std::string req = std::string(R"({"state":)") + kDiag +
                          R"(,"basis":{"dim":2,"re":[[1,0],[0,1]]})" +
                          R"(,"lengths":[8],"rates":[0.5],"format":"csv"})";
  char* out = nullptr;
  REQUIRE(qent_compress(req.c_str(), &out) == QENT_OK);
  const std::string doc = take(out);
  CHECK(doc.rfind("n,rate,fidelity,log2dim\n", 0) == 0);
  CHECK(doc.find("8,0.5,") != std::string::npos);
}

TEST_CASE("chain op reports node entropies and bound dips") {
  const char* req = R"({"links":[[0.5,0.5],[0.5,0.5]]})";
  char* out = nullptr;
  REQUIRE(qent_chain_network(req, &out) == QENT_OK);
  const std::string doc = take(out);
  CHECK(doc.find("\"node_entropy\":[1,2,1]") != std::string::npos);
  CHECK(doc.find("\"identities_ok\":true") != std::string::npos);
  CHECK(doc.find("\"classical_bound_violations\":[") != std::string::npos);
}

TEST_CASE("models op covers the three model kinds") {
  char* out = nullptr;
  REQUIRE(qent_models(R"({"kind":"thermal","nbar":1.0,"cutoffs":[4,8]})", &out) ==
          QENT_OK);
  std::string doc = take(out);
  CHECK(doc.find("\"entropy_limit\":2") != std::string::npos);

  REQUIRE(qent_models(R"({"kind":"gaussian","cov":[[3,0],[0,3]],"lambda":0.5})",
                      &out) == QENT_OK);
  doc = take(out);
  CHECK(doc.find("\"symplectic_eigenvalues\":[3]") != std::string::npos);
  CHECK(doc.find("\"mixed\":") != std::string::npos);

  REQUIRE(qent_models(
              R"({"kind":"spin","cluster":1,"outer":2,"couplings":[[0.3,0.7]],"times":[1.0]})",
              &out) == QENT_OK);
  doc = take(out);
  CHECK(doc.find("\"coherence\":0.1402799364") != std::string::npos);

  CHECK(qent_models(R"({"kind":"banana"})", &out) == QENT_BAD_INPUT);
}
