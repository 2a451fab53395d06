// Compares the serial reference refinement kernel against the parallel one
// on a given instance and asserts identical labels.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "scott/alphasets.hpp"
#include "scott/gspace.hpp"

using namespace scott;

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: bench_refine <instance> [jobs]\n";
    return 2;
  }
  int jobs = argc > 2 ? std::atoi(argv[2]) : 4;
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << argv[1] << ": cannot open\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  EffectiveGSpace sp = load_instance(buf.str());

  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto fixed = [](const RefinementTrace& t) {
    return t.levels() >= 2 &&
           t.classes_at(t.levels()) == t.classes_at(t.levels() - 1);
  };
  RefinementTrace serial(sp);
  while (!fixed(serial)) serial.refine_step_serial();
  auto t1 = clock::now();
  RefinementTrace parallel(sp);
  while (!fixed(parallel)) parallel.refine_step(jobs);
  auto t2 = clock::now();

  if (serial.levels() != parallel.levels()) {
    std::cerr << "level count mismatch\n";
    return 1;
  }
  for (int lvl = 1; lvl <= serial.levels(); ++lvl)
    for (int si = 0; si < (int)serial.sigmas().size(); ++si)
      for (int p = 0; p < sp.npoints(); ++p)
        if (serial.label_id(lvl, p, si) != parallel.label_id(lvl, p, si)) {
          std::cerr << "label mismatch at level " << lvl << "\n";
          return 1;
        }

  auto ms = [](auto d) {
    return std::chrono::duration_cast<std::chrono::microseconds>(d).count() /
           1000.0;
  };
  std::cout << "points=" << sp.npoints() << " sigmas=" << serial.sigmas().size()
            << " levels=" << serial.levels() << "\n";
  std::cout << "serial:   " << ms(t1 - t0) << " ms\n";
  std::cout << "parallel (" << jobs << " jobs): " << ms(t2 - t1) << " ms\n";
  std::cout << "labels identical\n";
  return 0;
}
