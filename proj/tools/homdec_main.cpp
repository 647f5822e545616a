#include <cstdio>
int main(){ std::puts("homdec placeholder"); return 0; }
