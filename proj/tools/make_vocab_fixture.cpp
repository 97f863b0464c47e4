// Writes the golden vocabulary fixture for a corpus: make_vocab_fixture <corpus> <max-vocab> > out.vocab

#include "scs/problems/corpus.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: make_vocab_fixture <corpus> <max-vocab>\n";
    return 2;
  }
  try {
    const scs::Corpus corpus = scs::load_corpus(argv[1], std::strtoul(argv[2], nullptr, 10));
    scs::write_vocab_fixture(corpus, std::cout);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
