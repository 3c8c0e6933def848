// Regenerates the shipped example documents (data/<id>.ring.json) from the
// built-in catalog at default parameters.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "gradering/corpus.hpp"

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "cannot create " << dir << ": " << ec.message() << "\n";
    return 1;
  }
  for (const std::string& id : gradering::catalog_ids()) {
    const auto doc = gradering::build_catalog_example(id);
    const auto path = dir / (id + ".ring.json");
    std::ofstream out(path, std::ios::binary);
    out << gradering::emit_spec(doc);
    out.close();
    if (!out) {
      std::cerr << "write failed: " << path << "\n";
      return 1;
    }
    std::cout << path.string() << "\n";
  }
  return 0;
}
