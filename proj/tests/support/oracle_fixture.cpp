// Test companion speaking the oracle line protocol. Modes:
//   sphere   -> sum of squared coordinates
//   const35  -> 3.5 for any input
//   nan      -> the string "nan"
//   garbage  -> a non-numeric reply
//   exit     -> terminates immediately
//   slow     -> answers 1.0 after a 2 s delay

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "sphere";
  if (mode == "exit") return 0;

  std::string line;
  while (std::getline(std::cin, line)) {
    if (mode == "slow") std::this_thread::sleep_for(std::chrono::seconds(2));
    if (mode == "const35") {
      std::cout << "3.5\n" << std::flush;
    } else if (mode == "nan") {
      std::cout << "nan\n" << std::flush;
    } else if (mode == "garbage") {
      std::cout << "not-a-number\n" << std::flush;
    } else if (mode == "slow") {
      std::cout << "1.0\n" << std::flush;
    } else {
      std::istringstream ss(line);
      double v = 0.0, acc = 0.0;
      while (ss >> v) acc += v * v;
      std::cout.precision(17);
      std::cout << acc << "\n" << std::flush;
    }
  }
  return 0;
}
