class UnionFind:
    """Disjoint sets over arbitrary hashable items, with path compression."""

    def __init__(self, items=()):
        self.parent = {}
        for item in items:
            self.add(item)

    def add(self, item):
        if item not in self.parent:
            self.parent[item] = item

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def groups(self):
        out = {}
        for item in self.parent:
            out.setdefault(self.find(item), set()).add(item)
        return [frozenset(g) for g in out.values()]
