# Reference values (mpmath, 80 digits) frozen into tests/cassels.rs.
import mpmath as mp
mp.mp.dps = 80
def poly(m):
    c=[1]
    for mj in m:
        n=[0]*(len(c)+1)
        for i,a in enumerate(c):
            n[i+1]+=a; n[i]-=a*mj
        c=n
    c[0]-=1
    return c
for m in [(-10,0,10),(-3,1,4),(-5,-1,2,7),(-100,0,100)]:
    c=poly(m); d=len(m)
    roots=sorted(mp.re(r) for r in mp.polyroots(list(reversed(c)),maxsteps=500,extraprec=400))
    D=mp.mpf(1)
    for i in range(d):
        for j in range(i+1,d): D*=roots[j]-roots[i]
    logs=[[mp.log(abs(roots[i]-m[l])) for i in range(d)] for l in range(d)]
    xi=max(max(t) for t in logs)
    n=d-1
    G=mp.matrix(n,n)
    for a in range(n):
        for b in range(n): G[a,b]=sum(logs[a][i]*logs[b][i] for i in range(d))
    cov=mp.sqrt(mp.det(G))
    print("m",m,"poly",c)
    print(" roots",[mp.nstr(r,30) for r in roots])
    print(" D_m",mp.nstr(abs(D),30)," xi",mp.nstr(xi,30)," covol",mp.nstr(cov,30))
    print(" t1",[mp.nstr(x,25) for x in logs[0]])
