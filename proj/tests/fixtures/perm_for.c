long CalcPermutation(long n, long r)
{
    long fact_n = 1, fact_n_r = 1;
    long i, j;

    for (i = 2; i <= n; i++)
        fact_n *= i;

    for (j = 2; j <= (n - r); j++)
        fact_n_r *= j;

    return fact_n / fact_n_r;
}
