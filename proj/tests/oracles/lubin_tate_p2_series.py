import sympy as sp
x,u,t=sp.symbols('x u t')
p,T,D,N=2,10,6,8
m=[sp.Integer(1)];k=1
while p**k<T:
    val=u/p*m[k-1].subs(u,u**p)
    if k>=2: val+=m[k-2].subs(u,u**(p*p))/p
    m.append(sp.expand(val));k+=1
ell=lambda z: sum(m[i]*z**(p**i) for i in range(len(m)))
def trunc(e,var):
    return sum(c*var**i*u**j for (i,j),c in sp.Poly(sp.expand(e),var,u).terms() if j<D and i<T)
e=t
for _ in range(T):
    e=trunc(t-(ell(e)-e),t)
ps=trunc(e.subs(t,2*ell(x)),x)
P=sp.Poly(ps,x,u)
for i in range(1,T):
    c=sum(cc*u**mon[1] for mon,cc in P.terms() if mon[0]==i)
    c=sp.Poly(c,u) if c!=0 else None
    print(i, [(mon[0], int(cc)%2**N) for mon,cc in c.terms()] if c else 0)
