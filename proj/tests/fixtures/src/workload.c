// Copyright 2026 The ERIC Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* Mixed workload compiled for RISC-V to provide real code fixtures. */
typedef unsigned int u32;
typedef unsigned long long u64;

static u32 crc_table[256];

void crc_init(void) {
  for (u32 i = 0; i < 256; ++i) {
    u32 c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    crc_table[i] = c;
  }
}

u32 crc32(const unsigned char *p, unsigned long n) {
  u32 c = 0xFFFFFFFFu;
  while (n--) c = crc_table[(c ^ *p++) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

static void swap(int *a, int *b) { int t = *a; *a = *b; *b = t; }

void quicksort(int *v, int lo, int hi) {
  while (lo < hi) {
    int p = v[(lo + hi) / 2], i = lo, j = hi;
    while (i <= j) {
      while (v[i] < p) ++i;
      while (v[j] > p) --j;
      if (i <= j) swap(&v[i++], &v[j--]);
    }
    if (j - lo < hi - i) { quicksort(v, lo, j); lo = i; }
    else { quicksort(v, i, hi); hi = j; }
  }
}

void matmul(const double *a, const double *b, double *c, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
      c[i * n + j] = s;
    }
}

unsigned long str_len(const char *s) { const char *p = s; while (*p) ++p; return (unsigned long)(p - s); }

int str_cmp(const char *a, const char *b) {
  while (*a && *a == *b) { ++a; ++b; }
  return (unsigned char)*a - (unsigned char)*b;
}

char *str_rev(char *s) {
  unsigned long n = str_len(s);
  for (unsigned long i = 0; i < n / 2; ++i) { char t = s[i]; s[i] = s[n - 1 - i]; s[n - 1 - i] = t; }
  return s;
}

u64 fib_iter(u32 n) { u64 a = 0, b = 1; while (n--) { u64 t = a + b; a = b; b = t; } return a; }

u64 gcd(u64 a, u64 b) { while (b) { u64 t = a % b; a = b; b = t; } return a; }

int is_prime(u64 n) {
  if (n < 2) return 0;
  for (u64 d = 2; d * d <= n; ++d) if (n % d == 0) return 0;
  return 1;
}

u32 sieve(unsigned char *mark, u32 n) {
  u32 count = 0;
  for (u32 i = 0; i < n; ++i) mark[i] = 1;
  for (u32 i = 2; i < n; ++i) {
    if (!mark[i]) continue;
    ++count;
    for (u32 j = i * 2; j < n; j += i) mark[j] = 0;
  }
  return count;
}

/* Tiny stack-machine interpreter. */
enum { OP_PUSH, OP_ADD, OP_SUB, OP_MUL, OP_DIV, OP_DUP, OP_SWAP, OP_JZ, OP_JMP, OP_HALT, OP_LOAD, OP_STORE };

long run_vm(const int *code, int len, long *mem) {
  long stack[64];
  int sp = 0, pc = 0;
  while (pc < len) {
    int op = code[pc++];
    switch (op) {
      case OP_PUSH: stack[sp++] = code[pc++]; break;
      case OP_ADD: sp--; stack[sp - 1] += stack[sp]; break;
      case OP_SUB: sp--; stack[sp - 1] -= stack[sp]; break;
      case OP_MUL: sp--; stack[sp - 1] *= stack[sp]; break;
      case OP_DIV: sp--; if (stack[sp]) stack[sp - 1] /= stack[sp]; break;
      case OP_DUP: stack[sp] = stack[sp - 1]; sp++; break;
      case OP_SWAP: { long t = stack[sp - 1]; stack[sp - 1] = stack[sp - 2]; stack[sp - 2] = t; } break;
      case OP_JZ: { int t = code[pc++]; if (!stack[--sp]) pc = t; } break;
      case OP_JMP: pc = code[pc]; break;
      case OP_LOAD: stack[sp - 1] = mem[stack[sp - 1] & 63]; break;
      case OP_STORE: sp -= 2; mem[stack[sp + 1] & 63] = stack[sp]; break;
      case OP_HALT: return sp ? stack[sp - 1] : 0;
      default: return -1;
    }
  }
  return sp ? stack[sp - 1] : 0;
}

/* Bit manipulation helpers. */
u32 popcount32(u32 x) { x = x - ((x >> 1) & 0x55555555u); x = (x & 0x33333333u) + ((x >> 2) & 0x33333333u); return (((x + (x >> 4)) & 0x0F0F0F0Fu) * 0x01010101u) >> 24; }
u32 reverse_bits(u32 x) { u32 r = 0; for (int i = 0; i < 32; ++i) { r = (r << 1) | (x & 1); x >>= 1; } return r; }
u32 rotl(u32 x, int k) { return (x << (k & 31)) | (x >> ((32 - k) & 31)); }

/* xorshift PRNG and a shuffle. */
static u64 rng_state = 88172645463325252ull;
u64 xorshift(void) { rng_state ^= rng_state << 13; rng_state ^= rng_state >> 7; rng_state ^= rng_state << 17; return rng_state; }
void shuffle(int *v, int n) { for (int i = n - 1; i > 0; --i) swap(&v[i], &v[xorshift() % (u64)(i + 1)]); }

/* Binary search tree in a fixed arena. */
struct node { int key, left, right; };
static struct node arena[256];
static int arena_used;
int bst_insert(int root, int key) {
  if (root < 0) { arena[arena_used] = (struct node){key, -1, -1}; return arena_used++; }
  if (key < arena[root].key) arena[root].left = bst_insert(arena[root].left, key);
  else arena[root].right = bst_insert(arena[root].right, key);
  return root;
}
int bst_height(int root) {
  if (root < 0) return 0;
  int l = bst_height(arena[root].left), r = bst_height(arena[root].right);
  return 1 + (l > r ? l : r);
}

/* Fixed-point math. */
int fx_mul(int a, int b) { return (int)(((long long)a * b) >> 16); }
int fx_sqrt(int v) { int x = v, y = (x + (1 << 16)) / 2; for (int i = 0; i < 20 && y; ++i) { x = y; y = (x + fx_mul(v, (1 << 16)) / x * 0 + (int)(((long long)v << 16) / x)) / 2; } return x; }

double horner(const double *c, int n, double x) { double r = 0; for (int i = n - 1; i >= 0; --i) r = r * x + c[i]; return r; }
double integrate(double (*f)(double), double a, double b, int n) {
  double h = (b - a) / n, s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

void base64_encode(const unsigned char *in, unsigned long n, char *out) {
  static const char tbl[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  unsigned long i = 0, o = 0;
  for (; i + 2 < n; i += 3) {
    u32 v = (u32)in[i] << 16 | (u32)in[i + 1] << 8 | in[i + 2];
    out[o++] = tbl[v >> 18]; out[o++] = tbl[(v >> 12) & 63]; out[o++] = tbl[(v >> 6) & 63]; out[o++] = tbl[v & 63];
  }
  if (i < n) {
    u32 v = (u32)in[i] << 16 | (i + 1 < n ? (u32)in[i + 1] << 8 : 0);
    out[o++] = tbl[v >> 18]; out[o++] = tbl[(v >> 12) & 63];
    out[o++] = i + 1 < n ? tbl[(v >> 6) & 63] : '='; out[o++] = '=';
  }
  out[o] = 0;
}

int atoi_simple(const char *s) { int sign = 1, v = 0; if (*s == '-') { sign = -1; ++s; } while (*s >= '0' && *s <= '9') v = v * 10 + (*s++ - '0'); return sign * v; }

void heap_sift(int *v, int n, int i) {
  for (;;) { int l = 2 * i + 1, r = l + 1, m = i;
    if (l < n && v[l] > v[m]) m = l; if (r < n && v[r] > v[m]) m = r;
    if (m == i) return; swap(&v[i], &v[m]); i = m; }
}
void heapsort(int *v, int n) { for (int i = n / 2 - 1; i >= 0; --i) heap_sift(v, n, i); for (int i = n - 1; i > 0; --i) { swap(&v[0], &v[i]); heap_sift(v, i, 0); } }

u32 adler32(const unsigned char *p, unsigned long n) { u32 a = 1, b = 0; while (n--) { a = (a + *p++) % 65521; b = (b + a) % 65521; } return (b << 16) | a; }

void transpose(double *m, int n) { for (int i = 0; i < n; ++i) for (int j = i + 1; j < n; ++j) { double t = m[i * n + j]; m[i * n + j] = m[j * n + i]; m[j * n + i] = t; } }

long levenshtein(const char *a, const char *b, long *row) {
  long n = (long)str_len(a), m = (long)str_len(b);
  for (long j = 0; j <= m; ++j) row[j] = j;
  for (long i = 1; i <= n; ++i) {
    long prev = row[0]; row[0] = i;
    for (long j = 1; j <= m; ++j) {
      long cur = row[j], cost = a[i - 1] != b[j - 1];
      long best = prev + cost; if (row[j] + 1 < best) best = row[j] + 1; if (row[j - 1] + 1 < best) best = row[j - 1] + 1;
      row[j] = best; prev = cur;
    }
  }
  return row[m];
}
