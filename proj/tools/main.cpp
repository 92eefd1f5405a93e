#include <cstdio>

int main() {
  std::puts("equivec: placeholder");
  return 0;
}
