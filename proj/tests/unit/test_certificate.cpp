#include <doctest.h>

#include <cmath>
#include <random>

#include "rotavg/certificate.hpp"
#include "rotavg/eigs.hpp"
#include "rotavg/so3.hpp"
#include "rotavg/solvers.hpp"
#include "rotavg/synth.hpp"

using namespace rotavg;

TEST_CASE("build_lambda: noiseless complete graph gives (n-1) I blocks") {
  const int n = 6;
  const auto inst = generate({n, 0.0, 0.0, 301});
  const RotationStack solution = spanning_tree_init(inst.graph);
  const Eigen::MatrixXd lambda = build_lambda(inst.graph, solution);
  for (int i = 0; i < n; ++i) {
    CHECK((lambda.block<3, 3>(3 * i, 3 * i) - (n - 1.0) * Mat3::Identity()).norm() <
          1e-12);
    for (int j = 0; j < n; ++j) {
      if (i != j) CHECK(lambda.block<3, 3>(3 * i, 3 * j).norm() == 0.0);
    }
  }
}

TEST_CASE("build_lambda: single consistent edge gives identity blocks") {
  std::mt19937_64 rng(5);
  const Mat3 r0 = random_rotation_uniform(rng);
  const Mat3 r1 = random_rotation_uniform(rng);
  const RAGraph g(2, {{0, 1, r0.transpose() * r1}});
  const Eigen::MatrixXd lambda = build_lambda(g, {r0, r1});
  CHECK((lambda.block<3, 3>(0, 0) - Mat3::Identity()).norm() < 1e-14);
  CHECK((lambda.block<3, 3>(3, 3) - Mat3::Identity()).norm() < 1e-14);
}

TEST_CASE("certificate_matrix: diagonal blocks are Lambda_i, off-diagonal -R~_ij") {
  const auto inst = generate({5, 0.3, 0.0, 307});
  const RotationStack stack = spanning_tree_init(inst.graph);
  const Eigen::MatrixXd m = certificate_matrix(inst.graph, stack);
  const Eigen::MatrixXd lambda = build_lambda(inst.graph, stack);
  const Eigen::MatrixXd rt = assemble_r_tilde(inst.graph);
  for (int i = 0; i < 5; ++i) {
    CHECK((m.block<3, 3>(3 * i, 3 * i) - lambda.block<3, 3>(3 * i, 3 * i)).norm() ==
          0.0);
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      CHECK((m.block<3, 3>(3 * i, 3 * j) + rt.block<3, 3>(3 * i, 3 * j)).norm() == 0.0);
    }
  }
}

TEST_CASE("certify: noiseless solution has a three-dimensional zero eigenspace") {
  const int n = 8;
  const auto inst = generate({n, 0.0, 0.0, 311});
  const RotationStack solution = spanning_tree_init(inst.graph);
  const Certificate cert = certify(inst.graph, solution);
  CHECK(cert.optimal);
  CHECK(cert.min_eig >= -1e-10);
  CHECK(cert.asymmetry < 1e-12);

  Eigen::MatrixXd m = certificate_matrix(inst.graph, solution);
  m = 0.5 * (m + m.transpose());
  const Eigen::VectorXd eigs = smallest_eigenvalues(m, 4);
  CHECK(std::abs(eigs(0)) < 1e-10);
  CHECK(std::abs(eigs(1)) < 1e-10);
  CHECK(std::abs(eigs(2)) < 1e-10);
  // complete graph: the rest of the spectrum sits at n
  CHECK(eigs(3) == doctest::Approx(static_cast<double>(n)).epsilon(1e-9));
}

TEST_CASE("certify: converged run is certified at numerical zero") {
  const auto inst = generate({20, 0.2, 0.0, 313});
  SolverConfig cfg;
  cfg.epsilon = 1e-10;
  const auto result = solve_bcd(inst.graph, cfg);
  const Certificate cert = certify(inst.graph, result.rotations);
  CHECK(cert.optimal);
  CHECK(cert.min_eig >= -1e-10);
  CHECK(cert.asymmetry < 1e-6);
}

TEST_CASE("certify: perturbed stack is not certified") {
  const auto inst = generate({12, 0.5, 0.0, 317});
  SolverConfig cfg;
  cfg.epsilon = 1e-10;
  auto stack = solve_bcd(inst.graph, cfg).rotations;
  stack[3] = stack[3] * axis_angle_to_rotation({Vec3::UnitX(), 0.5});
  const Certificate cert = certify(inst.graph, stack);
  CHECK(cert.asymmetry > 100.0 * cert.tol);  // far from stationary
  CHECK_FALSE(cert.optimal);
}

TEST_CASE("certify: verdict is gauge covariant") {
  const auto inst = generate({10, 0.3, 0.2, 331});
  SolverConfig cfg;
  cfg.epsilon = 1e-9;
  const auto result = solve_sum(inst.graph, cfg);
  const Certificate base = certify(inst.graph, result.rotations);
  std::mt19937_64 rng(332);
  const Mat3 gauge = random_rotation_uniform(rng);
  RotationStack turned(result.rotations.size());
  for (std::size_t i = 0; i < turned.size(); ++i) turned[i] = gauge * result.rotations[i];
  const Certificate moved = certify(inst.graph, turned);
  CHECK(std::abs(base.min_eig - moved.min_eig) < 1e-9);
}

TEST_CASE("certify: default tolerance scales with n") {
  const auto inst = generate({4, 0.0, 0.0, 337});
  const Certificate cert = certify(inst.graph, spanning_tree_init(inst.graph));
  CHECK(cert.tol == doctest::Approx(4e-6));
  const Certificate tight = certify(inst.graph, spanning_tree_init(inst.graph), 1e-9);
  CHECK(tight.tol == 1e-9);
}

TEST_CASE("certify: rejects an infeasible stack") {
  const auto inst = generate({4, 0.0, 0.0, 341});
  RotationStack bad = spanning_tree_init(inst.graph);
  bad[1] *= 1.5;
  CHECK_THROWS_AS(certify(inst.graph, bad), std::invalid_argument);
  CHECK_THROWS_AS(certify(inst.graph, RotationStack(3, Mat3::Identity())),
                  std::invalid_argument);
}
