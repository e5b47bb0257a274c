// Converts CMU-style pronouncing entries ("WORD  AH0 B AW1 T") into the
// dictionary format read by the predictors: "word phonemes syllables".
// Alternate pronunciations ("WORD(2)") and ";;;" comments are skipped.
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: cmudict_convert <cmudict> <out>\n";
    return 2;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "cannot open " << argv[1] << "\n";
    return 1;
  }
  std::ofstream out(argv[2]);
  std::string line;
  std::size_t written = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind(";;;", 0) == 0) continue;
    std::istringstream fields(line);
    std::string word, phone;
    fields >> word;
    if (word.empty() || word.back() == ')') continue;
    std::size_t phonemes = 0, syllables = 0;
    while (fields >> phone) {
      ++phonemes;
      // vowels carry a stress digit
      if (std::isdigit(static_cast<unsigned char>(phone.back()))) ++syllables;
    }
    if (phonemes == 0) continue;
    for (auto& ch : word) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    out << word << ' ' << phonemes << ' ' << syllables << '\n';
    ++written;
  }
  std::cerr << written << " entries\n";
  return 0;
}
