/* Small integer routines driven from one entry point. */

long calls;

long clamp(long v, long lo, long hi)
{
    if (v < lo)
        return lo;
    else if (v > hi)
        return hi;
    return v;
}

long absval(long v)
{
    if (v >= 0) {
        return v;
    } else {
        return -v;
    }
}

long gcd(long a, long b)
{
    long t;
    a = absval(a);
    b = absval(b);
    calls++;
    while (b != 0) {
        t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long lcm(long a, long b)
{
    long g = gcd(a, b);
    if (g == 0)
        return 0;
    return a / g * b;
}

long power_mod(long base, long e, long m)
{
    long result = 1;
    long i;
    if (m <= 1)
        return 0;
    base %= m;
    for (i = 0; i < e; i++) {
        result = (result * base) % m;
    }
    return result;
}

long fib(long n)
{
    long a = 0, b = 1, k, t;
    for (k = 0; k < n; ++k) {
        t = a + b;
        a = b;
        b = t;
    }
    return a;
}

long digit_sum(long v)
{
    long s = 0;
    v = absval(v);
    do {
        s += v % 10;
        v /= 10;
    } while (v > 0);
    return s;
}

long isqrt(long v)
{
    long r = 0;
    if (v <= 0)
        return 0;
    while ((r + 1) * (r + 1) <= v)
        r++;
    return r;
}

long is_prime(long v)
{
    long d;
    if (v < 2)
        return 0;
    for (d = 2; d * d <= v; d++) {
        if (v % d == 0)
            return 0;
    }
    return 1;
}

long count_primes(long n)
{
    long c = 0, v;
    for (v = 2; v <= n; v++)
        if (is_prime(v))
            c += 1;
    return c;
}

long collatz_steps(long v)
{
    long steps = 0;
    v = clamp(absval(v), 1, 40);
    while (v != 1 && steps < 200) {
        if (v % 2 == 0)
            v = v / 2;
        else
            v = 3 * v + 1;
        steps++;
    }
    return steps;
}

long mix_bits(long x, long y)
{
    long m = (x << 3) ^ (y >> 1);
    m |= x & 15;
    m &= ~(y & 3);
    return m ^ (x | y);
}

long run(long a, long b)
{
    long n = clamp(absval(a), 0, 20);
    long m = clamp(absval(b), 1, 12);
    long acc = 0, step;
    calls = 0;
    acc += gcd(a, b) + lcm(n, m);
    acc = acc * 3 + power_mod(n + 2, m, 97);
    acc -= fib(n % 15);
    step = digit_sum(a) + isqrt(n * m);
    if (step > 10 || n == 0)
        acc += step;
    else
        acc -= step;
    acc += count_primes(n + m) * (n - m + 4);
    acc ^= collatz_steps(a + b);
    acc = acc + mix_bits(n, m) + calls;
    return acc;
}
